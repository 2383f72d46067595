#pragma once

// Text and binary serialization of grid fields: CSV dumps, P6 images of m3,
// binary checkpoints and energy traces. All numbers use 17 significant digits.

#include "chiralmag/field.hpp"
#include "chiralmag/lattice.hpp"

#include <cstdint>
#include <iosfwd>
#include <vector>

namespace chiralmag {

inline constexpr char kCheckpointMagic[4] = {'C', 'M', 'G', 'F'};
inline constexpr std::uint32_t kCheckpointVersion = 1;

/// Header `i,j,x1,x2,m1,m2,m3`, one row per grid point in row-major order.
void write_field_csv(std::ostream& os, const RealField& f, const LatticeSpec& spec);
/// Reads a dump written by write_field_csv. Throws FormatError.
RealField read_field_csv(std::istream& is);

/// Binary P6 pixmap: column i, row n-1-j; blue/white/red for -max|m3|/0/+max|m3|.
void write_field_ppm(std::ostream& os, const RealField& f);

struct Checkpoint {
  ModelParams params;
  RealField field{1};
};

void write_checkpoint(std::ostream& os, const RealField& f, const ModelParams& p);
/// Throws FormatError on bad magic, version, or truncated data.
Checkpoint read_checkpoint(std::istream& is);

struct TraceEntry {
  long step = 0;
  double time = 0.0;
  double energy = 0.0;
  int fp_iters = 0;
};

/// Header `step,time,energy,fp_iters`.
void write_energy_trace(std::ostream& os, const std::vector<TraceEntry>& trace);

}  // namespace chiralmag
