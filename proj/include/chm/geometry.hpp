#pragma once

#include <vector>

#include "chm/complex_matrix.hpp"

namespace chm {

/// Hermitian, unit-trace, positive-semidefinite matrix. Construction
/// enforces hermiticity residual < 1e-12, |trace - 1| < 1e-12 and minimum
/// eigenvalue >= -1e-10 (projectors built from normalized vectors carry tiny
/// negative eigenvalue noise).
class DensityMatrix {
  public:
    explicit DensityMatrix(Eigen::MatrixXcd rho);

    static DensityMatrix maximally_mixed(int n);

    int dim() const { return static_cast<int>(rho_.rows()); }
    const Eigen::MatrixXcd& mat() const { return rho_; }

  private:
    Eigen::MatrixXcd rho_;
};

/// Regular simplex traced out by the rank-one projectors of an orthonormal
/// basis, centred at the maximally mixed state.
struct SimplexEmbedding {
    int n = 0;
    std::vector<DensityMatrix> vertices;
    DensityMatrix centroid;
};

struct SphereRadii {
    double outsphere = 0.0;
    double insphere = 0.0;
    double ratio = 0.0;
};

struct OrthogonalityReport {
    bool orthogonal = false;
    double max_dot = 0.0;
};

/// Rank-one projector |v><v| of a unit vector (norm within 1e-12).
DensityMatrix density_from_vector(const Eigen::VectorXcd& v);

/// Hilbert-Schmidt distance sqrt( Tr (a-b)^2 / 2 ).
double hs_distance(const DensityMatrix& a, const DensityMatrix& b);

/// Scalar product Tr[(a - I/n)(b - I/n)] / 2 of the centred Bloch vectors.
double bloch_dot(const DensityMatrix& a, const DensityMatrix& b);

/// Simplex of column projectors of an orthonormal basis. Rejects bases whose
/// orthonormality residual exceeds 1e-9.
SimplexEmbedding basis_simplex(const ComplexMatrix& basis);

/// Outsphere and insphere radii measured on witness states: the distance
/// from I/n to a pure projector P, and to the boundary state (I-P)/(n-1)
/// (one zero eigenvalue). The ratio comes out as n-1.
SphereRadii sphere_radii(int n);

/// True iff every vertex of one simplex has vanishing Bloch dot against
/// every vertex of the other (for centred simplices this is total
/// orthogonality of the spanned planes).
OrthogonalityReport total_orthogonality(const SimplexEmbedding& a, const SimplexEmbedding& b,
                                        double tol = 1e-10);

/// Rank of the stack of traceless vertex differences of all given simplices,
/// i.e. the dimension of the joint span of their planes.
int stacked_simplex_rank(const std::vector<SimplexEmbedding>& simplices,
                         double tol_rank = 1e-8);

}  // namespace chm
