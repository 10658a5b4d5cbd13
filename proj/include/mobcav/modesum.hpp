#pragma once

#include <cmath>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "mobcav/core.hpp"
#include "mobcav/errors.hpp"

namespace mobcav {

/// Ultraviolet suppression factor applied to every summed virtual mode.
/// Exponential: w(omega) = exp(-omega/omega_cut); Sharp: 1 for
/// omega <= omega_cut, else 0. In both schemes w(0) = 1 and w is
/// non-increasing.
struct CutoffWeight {
  CutoffScheme scheme = CutoffScheme::Exponential;
  double omega_cut = 0.0;  // 1/s, > 0

  double operator()(double omega) const {
    if (scheme == CutoffScheme::Sharp) return omega <= omega_cut ? 1.0 : 0.0;
    return std::exp(-omega / omega_cut);
  }
};

/// Checked wrapper: throws DomainError for omega < 0.
double cutoff_weight(double omega, const CutoffWeight& w);

/// Neumaier-compensated streaming accumulator. Sequential and branch-stable,
/// so a fixed term order yields a bit-identical result on every run.
class NeumaierSum {
public:
  void add(double x) {
    const double t = sum_ + x;
    if (std::abs(sum_) >= std::abs(x)) {
      comp_ += (sum_ - t) + x;
    } else {
      comp_ += (x - t) + sum_;
    }
    sum_ = t;
  }
  double value() const { return sum_ + comp_; }

private:
  double sum_ = 0.0;
  double comp_ = 0.0;
};

/// Compensated sum of a finite sequence; empty input gives 0.
double compensated_sum(std::span<const double> terms);

struct SumResult {
  double value = 0.0;
  double tail_estimate = 0.0;  // relative bound on the dropped tail, >= 0
  std::int64_t terms_used = 0;
};

/// Bilinear factorized mode sum over a shared outer index
///
///   sum_j w_j * (sum_l a(j,l) u_l(x)) * (sum_r a'(j,r) v_r(x)),
///
/// evaluated in O(|J|*|L|) per point instead of the O(|J|*|L|^2) of the raw
/// triple sum. Coefficients are materialized at construction; bases are
/// evaluated per point. Indices are 1-based, matching the mode labels they
/// represent.
class BilinearSumSpec {
public:
  using CoeffFn = std::function<double(int j, int l)>;
  using BasisFn = std::function<double(int l, double x)>;

  /// General spec. tail_decay_ratio is the expected geometric decay of the
  /// outer terms past truncation (e.g. the cutoff weight ratio at the
  /// boundary); 0 means the dropped tail is identically zero.
  BilinearSumSpec(int outer_count, int inner_count, std::function<double(int)> outer_weight,
                  CoeffFn a, CoeffFn a_prime, BasisFn u, BasisFn v,
                  double tail_decay_ratio = 0.0);

  /// Symmetric spec: a' = a and v = u. The per-term product is computed as a
  /// square, so nonnegative outer weights give a nonnegative result exactly.
  BilinearSumSpec(int outer_count, int inner_count, std::function<double(int)> outer_weight,
                  CoeffFn a, BasisFn u, double tail_decay_ratio = 0.0);

  SumResult eval(double x) const;

  int outer_count() const { return nj_; }
  int inner_count() const { return nl_; }

private:
  int nj_ = 0;
  int nl_ = 0;
  bool symmetric_ = false;
  double decay_ = 0.0;
  std::vector<double> w_;        // nj
  std::vector<double> a_, ap_;   // nj * nl, row-major by outer index
  BasisFn u_, v_;
};

/// Evaluate the factorized sum at one position.
SumResult eval_bilinear(const BilinearSumSpec& spec, double x);

enum class SumAxis { Axial, Transverse };

struct TruncationBounds {
  int bound = 1;        // largest retained index
  bool clamped = false; // true when the control maximum cut the search short
};

/// Truncation bound for a monotone frequency map. For a smoothly decaying
/// scheme this is the smallest index whose cutoff weight falls below
/// control.rel_tol; for the sharp scheme it is the largest index still inside
/// the cutoff support. Clamped to the control maximum for the given axis.
TruncationBounds truncation_for(const SumControl& control, const CutoffWeight& w,
                                const std::function<double(int)>& omega_of_index,
                                SumAxis axis = SumAxis::Axial);

/// Control with the tolerance tightened for bound selection. Terms just past
/// the rel_tol weight crossing are only single-power suppressed, so an
/// evaluator that truncates exactly there leaves a tail comparable to rel_tol
/// itself; picking bounds against a stricter tolerance leaves the measured
/// tail well below the one actually requested.
SumControl tightened_for_truncation(SumControl control);

}  // namespace mobcav
