#pragma once

#include <complex>
#include <vector>

namespace pwlab::mode {

using cplx = std::complex<double>;

// Weighted superposition of two-mode coherent products
// sum_i w_i |alpha1_i, alpha2_i>. Coherent states are not orthogonal,
// so every norm/overlap goes through the exact overlap formula below.
struct CoherentTwoMode {
    struct Branch {
        cplx weight;
        cplx alpha1;
        cplx alpha2;
    };
    std::vector<Branch> branches;

    static CoherentTwoMode product(cplx alpha1, cplx alpha2);

    double norm() const;
    CoherentTwoMode normalized() const;

    // Collapses branches with identical (alpha1, alpha2) and drops
    // branches whose weight cancelled to zero.
    void merge_duplicates(double weight_eps = 1e-15);
};

// <a|b> = exp(-|a|^2/2 - |b|^2/2 + conj(a) b)
cplx coherent_overlap(cplx a, cplx b);

cplx overlap(const CoherentTwoMode& a, const CoherentTwoMode& b);

// |<a|b>|^2 / (|a|^2 |b|^2)
double fidelity(const CoherentTwoMode& a, const CoherentTwoMode& b);

// Per branch: |alpha,0> -> (|alpha,0> + i|0,alpha>)/sqrt2 and
// |0,alpha> -> (i|alpha,0> + |0,alpha>)/sqrt2. Branches must have at
// least one vacuum mode. Rejects outputs above 2^16 branches.
CoherentTwoMode ebs_transform(const CoherentTwoMode& c);

// Amplitude map of an ordinary splitter:
// (a1, a2) -> ((a1 + i a2)/sqrt2, (i a1 + a2)/sqrt2), branch by branch.
CoherentTwoMode classical_bs_transform(const CoherentTwoMode& c);

}  // namespace pwlab::mode
