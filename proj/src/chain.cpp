#include "ell/chain.hpp"

#include <stdexcept>
#include <unsupported/Eigen/KroneckerProduct>

namespace ell {

ChainSpace::ChainSpace(std::vector<int> dims) : dims_(std::move(dims))
{
    if (dims_.size() < 2) throw std::invalid_argument("chain needs at least one factor");
    const int k = factors();
    fsize_.resize(k);
    stride_.resize(k);
    for (int i = 0; i < k; ++i) fsize_[i] = long(dims_[i]) * dims_[i + 1];
    long s = 1;
    for (int i = k - 1; i >= 0; --i) {
        stride_[i] = s;
        s *= fsize_[i];
    }
    size_ = s;
}

Eigen::MatrixXcd ChainSpace::act(int i, const Eigen::MatrixXcd& op) const
{
    const long before = size_ / (stride_[i] * fsize_[i]);
    const Eigen::MatrixXcd Ib = Eigen::MatrixXcd::Identity(before, before);
    const Eigen::MatrixXcd Ia = Eigen::MatrixXcd::Identity(stride_[i], stride_[i]);
    return Eigen::kroneckerProduct(Ib, Eigen::kroneckerProduct(op, Ia).eval()).eval();
}

// factor vectors are column-major vec(M)
Eigen::MatrixXcd ChainSpace::left(int i, const Eigen::MatrixXcd& N) const
{
    const int r = dims_[i], rp = dims_[i + 1];
    if (N.rows() != rp || N.cols() != rp) throw std::invalid_argument("left action shape");
    return act(i, Eigen::kroneckerProduct(Eigen::MatrixXcd::Identity(r, r), N).eval());
}

Eigen::MatrixXcd ChainSpace::right(int i, const Eigen::MatrixXcd& N) const
{
    const int r = dims_[i], rp = dims_[i + 1];
    if (N.rows() != r || N.cols() != r) throw std::invalid_argument("right action shape");
    return act(i, Eigen::kroneckerProduct(N.transpose(), Eigen::MatrixXcd::Identity(rp, rp)).eval());
}

Eigen::VectorXcd ChainSpace::tensor(const std::vector<Eigen::MatrixXcd>& ms) const
{
    if (static_cast<int>(ms.size()) != factors()) throw std::invalid_argument("tensor arity");
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(1);
    for (int i = 0; i < factors(); ++i) {
        if (ms[i].rows() != dims_[i + 1] || ms[i].cols() != dims_[i]) throw std::invalid_argument("tensor shape");
        const Eigen::MatrixXcd& M = ms[i];
        const Eigen::VectorXcd f = Eigen::Map<const Eigen::VectorXcd>(M.data(), M.size());
        v = Eigen::kroneckerProduct(v, f).eval();
    }
    return v;
}

Eigen::MatrixXcd ChainSpace::contract(const Eigen::VectorXcd& v) const
{
    const int k = factors();
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(dims_[k], dims_[0]);
    std::vector<long> idx(k, 0);
    for (long flat = 0; flat < size_; ++flat) {
        long rem = flat;
        for (int i = 0; i < k; ++i) {
            idx[i] = rem / stride_[i];
            rem %= stride_[i];
        }
        if (v[flat] == std::complex<double>(0)) continue;
        // vec index -> (row, col) of factor i, column-major
        Eigen::MatrixXcd acc;
        for (int i = 0; i < k; ++i) {
            Eigen::MatrixXcd E = Eigen::MatrixXcd::Zero(dims_[i + 1], dims_[i]);
            E(idx[i] % dims_[i + 1], idx[i] / dims_[i + 1]) = 1;
            acc = i == 0 ? E : Eigen::MatrixXcd(E * acc);
        }
        out += v[flat] * acc;
    }
    return out;
}

} // namespace ell
