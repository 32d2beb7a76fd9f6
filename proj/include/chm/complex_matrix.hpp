#pragma once

#include <Eigen/Dense>
#include <complex>
#include <vector>

namespace chm {

using Complex = std::complex<double>;

/// Dense square complex matrix, the common carrier for unitaries, Hadamard
/// candidates and orthonormal bases. Construction rejects non-square shapes
/// and non-finite entries; instances are immutable values afterwards.
class ComplexMatrix {
  public:
    explicit ComplexMatrix(Eigen::MatrixXcd entries);

    static ComplexMatrix identity(int n);

    int dim() const { return static_cast<int>(mat_.rows()); }
    const Eigen::MatrixXcd& mat() const { return mat_; }
    Complex operator()(int i, int j) const { return mat_(i, j); }

    bool operator==(const ComplexMatrix& other) const { return mat_ == other.mat_; }

  private:
    Eigen::MatrixXcd mat_;
};

/// Entrywise phase grid phi_ij in radians, reduced to [0, 2*pi) on
/// construction. Applying it to a matrix multiplies entry (i,j) by
/// exp(i*phi_ij).
class PhaseGrid {
  public:
    PhaseGrid(int n, std::vector<double> phases_row_major);

    int dim() const { return n_; }
    double operator()(int i, int j) const { return phases_[static_cast<std::size_t>(i) * n_ + j]; }

    ComplexMatrix applied_to(const ComplexMatrix& m) const;

  private:
    int n_;
    std::vector<double> phases_;
};

/// Reduces an angle in radians to [0, 2*pi).
double reduce_phase(double radians);

}  // namespace chm
