#pragma once

#include <string>
#include <vector>

#include "fluxcf/errors.hpp"

extern "C" {
void dgbsv_(const int* n, const int* kl, const int* ku, const int* nrhs, double* ab,
            const int* ldab, int* ipiv, double* b, const int* ldb, int* info);
void dpbsv_(const char* uplo, const int* n, const int* kd, const int* nrhs, double* ab,
            const int* ldab, double* b, const int* ldb, int* info);
}

namespace fluxcf::detail {

/// General banded matrix in LAPACK dgbsv layout (column-major, kl extra rows
/// for the pivoting fill-in).
class BandMatrix {
 public:
  BandMatrix(int n, int kl, int ku)
      : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1), ab_(static_cast<size_t>(ldab_) * n, 0.0) {}

  void add(int i, int j, double v) { ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] += v; }

  /// Solve in place; rhs becomes the solution.
  void solve(std::vector<double>& rhs) {
    const int nrhs = 1;
    int info = 0;
    std::vector<int> ipiv(n_);
    dgbsv_(&n_, &kl_, &ku_, &nrhs, ab_.data(), &ldab_, ipiv.data(), rhs.data(), &n_, &info);
    if (info != 0)
      throw solver_error("banded LU solve failed (dgbsv info=" + std::to_string(info) + ")");
  }

 private:
  int n_, kl_, ku_, ldab_;
  std::vector<double> ab_;
};

/// Symmetric positive definite banded matrix in LAPACK dpbsv layout ('U').
class SpdBandMatrix {
 public:
  SpdBandMatrix(int n, int kd) : n_(n), kd_(kd), ldab_(kd + 1), ab_(static_cast<size_t>(ldab_) * n, 0.0) {}

  /// Store entry (i, j) with i <= j.
  void add_upper(int i, int j, double v) { ab_[static_cast<size_t>(j) * ldab_ + (kd_ + i - j)] += v; }

  void solve(std::vector<double>& rhs) {
    const char uplo = 'U';
    const int nrhs = 1;
    int info = 0;
    dpbsv_(&uplo, &n_, &kd_, &nrhs, ab_.data(), &ldab_, rhs.data(), &n_, &info);
    if (info != 0)
      throw solver_error("banded Cholesky solve failed (dpbsv info=" + std::to_string(info) + ")");
  }

 private:
  int n_, kd_, ldab_;
  std::vector<double> ab_;
};

}  // namespace fluxcf::detail
