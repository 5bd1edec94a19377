#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "ptspec/types.hpp"

namespace ptspec {

/// A zero of F(k) = 1/t(k) located in (or just below) the upper half k-plane.
struct KZero {
  Complex k;
  double residual = 0.0;  ///< |F(k)| at convergence
  int iterations = 0;
};

enum class EigenKind { RealBound, CCPE, SS };

std::string_view to_string(EigenKind kind);

/// One discrete eigenvalue E = k^2. CCPE records store the member with
/// Im E > 0; the conjugate is implied and its k-plane mate sits in `partner`.
struct EigenRecord {
  Complex energy;
  EigenKind kind = EigenKind::RealBound;
  KZero zero;
  std::optional<KZero> partner;
};

/// Canonical order: by Re E, then Im E.
void sort_canonical(std::vector<EigenRecord>& records);

/// A critical strength V2 = V_star at which a spectral singularity sits at E_star.
struct CriticalPoint {
  double v_star = 0.0;
  double e_star = 0.0;
  int m = 0;
};

std::size_t count_kind(const std::vector<EigenRecord>& records, EigenKind kind);

}  // namespace ptspec
