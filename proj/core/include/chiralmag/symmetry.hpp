#pragma once

// Action of lattice symmetries gamma = (R, t) on grid fields,
//   (gamma . m)(x) = R3 m(R^{-1}(x - t)),  R3 = diag(R, det R),
// restricted to elements that map collocation points onto collocation points.

#include "chiralmag/field.hpp"
#include "chiralmag/lattice.hpp"

#include <Eigen/Core>

#include <string_view>
#include <vector>

namespace chiralmag {

/// Axial isotropy subgroups: helical, vortex-antivortex and skyrmion classes.
enum class Symmetry { Sigma1, Sigma2, Sigma3 };

std::string_view to_string(Symmetry s);

struct GridSymmetry {
  Eigen::Matrix2d rotation = Eigen::Matrix2d::Identity();
  Eigen::Matrix2i lattice_map = Eigen::Matrix2i::Identity();  ///< A^{-1} R A
  Eigen::Vector2i shift = Eigen::Vector2i::Zero();  ///< t = 2 pi A shift / n
  Eigen::Matrix3d spin = Eigen::Matrix3d::Identity();
};

/// Throws DomainError if R is not orthogonal or does not preserve the lattice.
GridSymmetry make_grid_symmetry(const LatticeSpec& spec, const Eigen::Matrix2d& rotation,
                                const Eigen::Vector2i& shift = Eigen::Vector2i::Zero());

RealField act(const GridSymmetry& g, const RealField& m);

Eigen::Matrix2d rotation_matrix(double angle);
/// Reflection across the line through the origin at angle phi.
Eigen::Matrix2d reflection_matrix(double phi);

/// The point group of the lattice (all holohedry elements), as grid maps.
std::vector<GridSymmetry> holohedry_elements(const LatticeSpec& spec);

/// Generators of the isotropy subgroup, realized on the grid of size n.
/// Throws SymmetryMismatch when the class does not exist on the lattice.
std::vector<GridSymmetry> isotropy_generators(Symmetry s, const LatticeSpec& spec, int n);

}  // namespace chiralmag
