#pragma once

#include <stdexcept>
#include <string>
#include <utility>

#include "uent/varieties.hpp"

namespace uent {

/// A square matrix acting on the state space of `kind`, in the coordinate
/// basis of SymVector, AntiVector or the row-major product basis.
struct GateMatrix {
  VarietyKind kind;
  CMatrix entries;
  std::string provenance = "external";

  GateMatrix() = default;
  GateMatrix(VarietyKind k, CMatrix m, std::string prov = "external")
      : kind(k), entries(std::move(m)), provenance(std::move(prov)) {
    if (entries.rows() != entries.cols() || entries.rows() != kind.ambient_dim())
      throw std::invalid_argument("GateMatrix: " + kind.label() + " needs a " + std::to_string(kind.ambient_dim()) +
                                  "x" + std::to_string(kind.ambient_dim()) + " matrix, got " +
                                  std::to_string(entries.rows()) + "x" + std::to_string(entries.cols()));
  }

  int n() const { return static_cast<int>(entries.rows()); }

  /// max |(U^H U - I)_ij|
  double unitarity_defect() const {
    return (entries.adjoint() * entries - CMatrix::Identity(n(), n())).cwiseAbs().maxCoeff();
  }

  bool is_unitary(double tol = 1e-12) const { return unitarity_defect() <= tol; }

  static GateMatrix identity(VarietyKind k) {
    return {k, CMatrix::Identity(k.ambient_dim(), k.ambient_dim()), "identity"};
  }
};

}  // namespace uent
