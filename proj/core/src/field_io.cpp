#include "chiralmag/field_io.hpp"

#include "chiralmag/errors.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstring>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

namespace chiralmag {

namespace {

static_assert(std::endian::native == std::endian::little,
              "checkpoint I/O assumes a little-endian host");

void put_u32(std::ostream& os, std::uint32_t v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

void put_f64(std::ostream& os, double v) {
  os.write(reinterpret_cast<const char*>(&v), sizeof v);
}

template <class T>
T get(std::istream& is) {
  T v{};
  if (!is.read(reinterpret_cast<char*>(&v), sizeof v)) {
    throw FormatError("checkpoint truncated");
  }
  return v;
}

std::array<unsigned char, 3> colormap(double t) {
  // t in [-1, 1]: blue -> white -> red.
  t = std::clamp(t, -1.0, 1.0);
  const auto byte = [](double x) {
    return static_cast<unsigned char>(std::lround(255.0 * std::clamp(x, 0.0, 1.0)));
  };
  if (t >= 0) return {byte(1.0), byte(1.0 - t), byte(1.0 - t)};
  return {byte(1.0 + t), byte(1.0 + t), byte(1.0)};
}

}  // namespace

void write_field_csv(std::ostream& os, const RealField& f, const LatticeSpec& spec) {
  const int n = f.n();
  std::ostringstream buf;
  buf.precision(17);
  buf << "i,j,x1,x2,m1,m2,m3\n";
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const Eigen::Vector2d x = spec.point(static_cast<double>(i) / n, static_cast<double>(j) / n);
      const Vec3& m = f(i, j);
      buf << i << ',' << j << ',' << x(0) << ',' << x(1) << ',' << m(0) << ',' << m(1) << ','
          << m(2) << '\n';
    }
  }
  os << buf.str();
}

RealField read_field_csv(std::istream& is) {
  std::string line;
  if (!std::getline(is, line) || line != "i,j,x1,x2,m1,m2,m3") {
    throw FormatError("field CSV: missing header");
  }
  struct Row {
    int i, j;
    Vec3 m;
  };
  std::vector<Row> rows;
  while (std::getline(is, line)) {
    if (line.empty()) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    Row r{};
    double x1, x2;
    if (!(ls >> r.i >> r.j >> x1 >> x2 >> r.m(0) >> r.m(1) >> r.m(2))) {
      throw FormatError("field CSV: malformed row");
    }
    rows.push_back(r);
  }
  const auto n = static_cast<int>(std::lround(std::sqrt(static_cast<double>(rows.size()))));
  if (n <= 0 || static_cast<std::size_t>(n) * n != rows.size()) {
    throw FormatError("field CSV: row count is not a square");
  }
  RealField f(n);
  for (const Row& r : rows) {
    if (r.i < 0 || r.i >= n || r.j < 0 || r.j >= n) throw FormatError("field CSV: bad index");
    f(r.i, r.j) = r.m;
  }
  return f;
}

void write_field_ppm(std::ostream& os, const RealField& f) {
  const int n = f.n();
  double scale = 0.0;
  for (const Vec3& m : f.values()) scale = std::max(scale, std::abs(m(2)));
  os << "P6\n" << n << ' ' << n << "\n255\n";
  std::vector<unsigned char> pixels;
  pixels.reserve(static_cast<std::size_t>(3) * n * n);
  for (int r = 0; r < n; ++r) {
    const int j = n - 1 - r;
    for (int i = 0; i < n; ++i) {
      const double t = scale > 0 ? f(i, j)(2) / scale : 0.0;
      const auto c = colormap(t);
      pixels.insert(pixels.end(), c.begin(), c.end());
    }
  }
  os.write(reinterpret_cast<const char*>(pixels.data()), static_cast<std::streamsize>(pixels.size()));
}

void write_checkpoint(std::ostream& os, const RealField& f, const ModelParams& p) {
  os.write(kCheckpointMagic, 4);
  put_u32(os, kCheckpointVersion);
  put_u32(os, static_cast<std::uint32_t>(f.n()));
  for (double v : {p.kappa, p.lambda, p.alpha, p.beta}) put_f64(os, v);
  for (const Vec3& m : f.values()) {
    for (int c = 0; c < 3; ++c) put_f64(os, m(c));
  }
}

Checkpoint read_checkpoint(std::istream& is) {
  char magic[4];
  if (!is.read(magic, 4) || std::memcmp(magic, kCheckpointMagic, 4) != 0) {
    throw FormatError("checkpoint: bad magic");
  }
  if (get<std::uint32_t>(is) != kCheckpointVersion) {
    throw FormatError("checkpoint: unsupported version");
  }
  const auto n = get<std::uint32_t>(is);
  if (n == 0 || n % 2 == 0 || n > 1u << 15) throw FormatError("checkpoint: bad grid size");
  Checkpoint cp;
  cp.params.kappa = get<double>(is);
  cp.params.lambda = get<double>(is);
  cp.params.alpha = get<double>(is);
  cp.params.beta = get<double>(is);
  cp.field = RealField(static_cast<int>(n));
  for (Vec3& m : cp.field.values()) {
    for (int c = 0; c < 3; ++c) m(c) = get<double>(is);
  }
  return cp;
}

void write_energy_trace(std::ostream& os, const std::vector<TraceEntry>& trace) {
  std::ostringstream buf;
  buf.precision(17);
  buf << "step,time,energy,fp_iters\n";
  for (const TraceEntry& e : trace) {
    buf << e.step << ',' << e.time << ',' << e.energy << ',' << e.fp_iters << '\n';
  }
  os << buf.str();
}

}  // namespace chiralmag
