#include "sfe/randomgen.hpp"

namespace sfe {

Vector random_unit_vector(long dim, Rng& rng) {
    Vector v(dim);
    for (long i = 0; i < dim; ++i) v[i] = Complexd(rng.gaussian(), rng.gaussian());
    return v / v.norm();
}

PureState random_pure(const RegisterLayout& layout, Rng& rng) {
    return PureState(layout, random_unit_vector(layout.total_dim(), rng));
}

Matrix random_density_matrix(long dim, Rng& rng, long rank) {
    if (rank <= 0 || rank > dim) rank = dim;
    Matrix g(dim, rank);
    for (long j = 0; j < rank; ++j)
        for (long i = 0; i < dim; ++i) g(i, j) = Complexd(rng.gaussian(), rng.gaussian());
    Matrix rho = g * g.adjoint();
    return rho / rho.trace().real();
}

DensityOperator random_density(const RegisterLayout& layout, Rng& rng, long rank) {
    return DensityOperator(layout, random_density_matrix(layout.total_dim(), rng, rank));
}

Matrix random_unitary(long dim, Rng& rng) {
    Matrix g(dim, dim);
    for (long j = 0; j < dim; ++j)
        for (long i = 0; i < dim; ++i) g(i, j) = Complexd(rng.gaussian(), rng.gaussian());
    Eigen::HouseholderQR<Matrix> qr(g);
    Matrix q = qr.householderQ();
    Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
    // Fix column phases so the distribution is Haar.
    for (long j = 0; j < dim; ++j) {
        Complexd d = r(j, j);
        q.col(j) *= d / std::abs(d);
    }
    return q;
}

std::vector<double> random_distribution(long n, Rng& rng) {
    std::vector<double> p(n);
    double total = 0;
    for (auto& v : p) {
        v = -std::log(1.0 - rng.uniform());
        total += v;
    }
    for (auto& v : p) v /= total;
    return p;
}

} // namespace sfe
