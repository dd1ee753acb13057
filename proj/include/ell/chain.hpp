// Tensor space Hom(V_0,V_1) (x) ... (x) Hom(V_{k-1},V_k) with left/right
// actions on each factor and the composition contraction to Hom(V_0,V_k).
#pragma once

#include <vector>

#include <Eigen/Dense>

namespace ell {

class ChainSpace
{
public:
    explicit ChainSpace(std::vector<int> dims);

    long size() const { return size_; }
    int factors() const { return static_cast<int>(dims_.size()) - 1; }

    // M_i -> N M_i (N acts on V_{i+1})
    Eigen::MatrixXcd left(int i, const Eigen::MatrixXcd& N) const;
    // M_i -> M_i N (N acts on V_i^*)
    Eigen::MatrixXcd right(int i, const Eigen::MatrixXcd& N) const;

    Eigen::VectorXcd tensor(const std::vector<Eigen::MatrixXcd>& ms) const;
    // linear extension of (M_0, ..., M_{k-1}) -> M_{k-1} ... M_0
    Eigen::MatrixXcd contract(const Eigen::VectorXcd& v) const;

private:
    Eigen::MatrixXcd act(int i, const Eigen::MatrixXcd& op) const;

    std::vector<int> dims_;
    std::vector<long> fsize_, stride_;
    long size_ = 1;
};

} // namespace ell
