#include "mobcav/modesum.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

namespace mobcav {

double cutoff_weight(double omega, const CutoffWeight& w) {
  if (omega < 0.0) throw DomainError("cutoff_weight: omega must be >= 0");
  return w(omega);
}

double compensated_sum(std::span<const double> terms) {
  NeumaierSum acc;
  for (double t : terms) acc.add(t);
  return acc.value();
}

BilinearSumSpec::BilinearSumSpec(int outer_count, int inner_count,
                                 std::function<double(int)> outer_weight, CoeffFn a,
                                 CoeffFn a_prime, BasisFn u, BasisFn v, double tail_decay_ratio)
    : nj_(outer_count),
      nl_(inner_count),
      symmetric_(false),
      decay_(tail_decay_ratio),
      u_(std::move(u)),
      v_(std::move(v)) {
  if (nj_ < 1 || nl_ < 1) throw DomainError("bilinear sum: index ranges must be nonempty");
  w_.resize(static_cast<std::size_t>(nj_));
  a_.resize(static_cast<std::size_t>(nj_) * nl_);
  ap_.resize(static_cast<std::size_t>(nj_) * nl_);
  for (int j = 1; j <= nj_; ++j) {
    w_[j - 1] = outer_weight(j);
    for (int l = 1; l <= nl_; ++l) {
      a_[static_cast<std::size_t>(j - 1) * nl_ + (l - 1)] = a(j, l);
      ap_[static_cast<std::size_t>(j - 1) * nl_ + (l - 1)] = a_prime(j, l);
    }
  }
}

BilinearSumSpec::BilinearSumSpec(int outer_count, int inner_count,
                                 std::function<double(int)> outer_weight, CoeffFn a, BasisFn u,
                                 double tail_decay_ratio)
    : nj_(outer_count),
      nl_(inner_count),
      symmetric_(true),
      decay_(tail_decay_ratio),
      u_(std::move(u)) {
  if (nj_ < 1 || nl_ < 1) throw DomainError("bilinear sum: index ranges must be nonempty");
  w_.resize(static_cast<std::size_t>(nj_));
  a_.resize(static_cast<std::size_t>(nj_) * nl_);
  for (int j = 1; j <= nj_; ++j) {
    w_[j - 1] = outer_weight(j);
    for (int l = 1; l <= nl_; ++l) {
      a_[static_cast<std::size_t>(j - 1) * nl_ + (l - 1)] = a(j, l);
    }
  }
}

SumResult BilinearSumSpec::eval(double x) const {
  // Per-point basis tables; the inner dot products then run over contiguous
  // memory in a fixed ascending order.
  std::vector<double> ub(static_cast<std::size_t>(nl_));
  for (int l = 1; l <= nl_; ++l) ub[l - 1] = u_(l, x);
  std::vector<double> vb;
  if (!symmetric_) {
    vb.resize(static_cast<std::size_t>(nl_));
    for (int l = 1; l <= nl_; ++l) vb[l - 1] = v_(l, x);
  }

  NeumaierSum acc;
  double last_term = 0.0;
  for (int j = 0; j < nj_; ++j) {
    const double* row = a_.data() + static_cast<std::size_t>(j) * nl_;
    NeumaierSum p;
    for (int l = 0; l < nl_; ++l) p.add(row[l] * ub[l]);
    double term;
    if (symmetric_) {
      const double pv = p.value();
      term = w_[j] * (pv * pv);
    } else {
      const double* rowp = ap_.data() + static_cast<std::size_t>(j) * nl_;
      NeumaierSum q;
      for (int l = 0; l < nl_; ++l) q.add(rowp[l] * vb[l]);
      term = w_[j] * p.value() * q.value();
    }
    acc.add(term);
    last_term = term;
  }

  SumResult res;
  res.value = acc.value();
  res.terms_used = static_cast<std::int64_t>(nj_) * nl_;
  if (decay_ > 0.0 && decay_ < 1.0) {
    const double tail_abs = std::abs(last_term) * decay_ / (1.0 - decay_);
    const double scale = std::max(std::abs(res.value), tail_abs);
    res.tail_estimate = scale > 0.0 ? tail_abs / scale : 0.0;
  } else if (decay_ >= 1.0) {
    res.tail_estimate = std::numeric_limits<double>::infinity();
  }
  return res;
}

SumResult eval_bilinear(const BilinearSumSpec& spec, double x) { return spec.eval(x); }

SumControl tightened_for_truncation(SumControl control) {
  control.rel_tol = std::max(control.rel_tol * 1e-3, 1e-300);
  return control;
}

TruncationBounds truncation_for(const SumControl& control, const CutoffWeight& w,
                                const std::function<double(int)>& omega_of_index, SumAxis axis) {
  // Axial indices start at 1 (Dirichlet), transverse magnitudes at 0.
  const bool axial = axis == SumAxis::Axial;
  const int max_index = axial ? control.max_axial : control.max_transverse;
  const int lo = axial ? 1 : 0;
  TruncationBounds b{lo, false};
  if (max_index <= lo) {
    b.bound = lo;
    b.clamped = w.scheme == CutoffScheme::Sharp
                    ? w(omega_of_index(lo + 1)) > 0.0
                    : !(w(omega_of_index(lo + 1)) < control.rel_tol);
    return b;
  }
  if (w.scheme == CutoffScheme::Sharp) {
    // Retain every index inside the cutoff support.
    int bound = lo;
    for (int i = lo + 1; i <= max_index; ++i) {
      if (w(omega_of_index(i)) <= 0.0) return {bound, false};
      bound = i;
    }
    b.bound = max_index;
    b.clamped = w(omega_of_index(max_index + 1)) > 0.0;
    return b;
  }
  // Smooth decay: smallest index whose weight drops below the tolerance.
  for (int i = std::max(lo, 1); i <= max_index; ++i) {
    if (w(omega_of_index(i)) < control.rel_tol) {
      b.bound = i;
      return b;
    }
  }
  b.bound = max_index;
  b.clamped = true;
  return b;
}

}  // namespace mobcav
