#include "pwlab/coherent.hpp"

#include <cmath>
#include <stdexcept>

namespace pwlab::mode {

namespace {
constexpr cplx kI{0.0, 1.0};
const double kInvSqrt2 = 1.0 / std::sqrt(2.0);
constexpr std::size_t kMaxBranches = 1u << 16;
}  // namespace

CoherentTwoMode CoherentTwoMode::product(cplx alpha1, cplx alpha2) {
    CoherentTwoMode c;
    c.branches.push_back({cplx{1.0, 0.0}, alpha1, alpha2});
    return c;
}

cplx coherent_overlap(cplx a, cplx b) {
    return std::exp(-0.5 * std::norm(a) - 0.5 * std::norm(b) + std::conj(a) * b);
}

cplx overlap(const CoherentTwoMode& a, const CoherentTwoMode& b) {
    cplx s{0.0, 0.0};
    for (const auto& i : a.branches)
        for (const auto& j : b.branches)
            s += std::conj(i.weight) * j.weight * coherent_overlap(i.alpha1, j.alpha1) *
                 coherent_overlap(i.alpha2, j.alpha2);
    return s;
}

double CoherentTwoMode::norm() const {
    return std::sqrt(std::max(0.0, overlap(*this, *this).real()));
}

CoherentTwoMode CoherentTwoMode::normalized() const {
    CoherentTwoMode out = *this;
    double n = out.norm();
    if (n > 0.0)
        for (auto& br : out.branches) br.weight /= n;
    return out;
}

void CoherentTwoMode::merge_duplicates(double weight_eps) {
    std::vector<Branch> merged;
    for (const auto& br : branches) {
        bool found = false;
        for (auto& m : merged) {
            if (m.alpha1 == br.alpha1 && m.alpha2 == br.alpha2) {
                m.weight += br.weight;
                found = true;
                break;
            }
        }
        if (!found) merged.push_back(br);
    }
    std::erase_if(merged, [&](const Branch& b) { return std::abs(b.weight) < weight_eps; });
    branches = std::move(merged);
}

double fidelity(const CoherentTwoMode& a, const CoherentTwoMode& b) {
    double na = overlap(a, a).real();
    double nb = overlap(b, b).real();
    if (na <= 0.0 || nb <= 0.0) throw std::invalid_argument("fidelity: zero-norm state");
    return std::norm(overlap(a, b)) / (na * nb);
}

CoherentTwoMode ebs_transform(const CoherentTwoMode& c) {
    if (2 * c.branches.size() > kMaxBranches)
        throw std::length_error("ebs_transform: branch count would exceed 2^16");
    CoherentTwoMode out;
    out.branches.reserve(2 * c.branches.size());
    for (const auto& br : c.branches) {
        if (br.alpha2 == cplx{0.0, 0.0}) {
            out.branches.push_back({br.weight * kInvSqrt2, br.alpha1, cplx{0.0, 0.0}});
            out.branches.push_back({br.weight * kI * kInvSqrt2, cplx{0.0, 0.0}, br.alpha1});
        } else if (br.alpha1 == cplx{0.0, 0.0}) {
            out.branches.push_back({br.weight * kI * kInvSqrt2, br.alpha2, cplx{0.0, 0.0}});
            out.branches.push_back({br.weight * kInvSqrt2, cplx{0.0, 0.0}, br.alpha2});
        } else {
            throw std::invalid_argument("ebs_transform: branch must be |alpha,0> or |0,alpha>");
        }
    }
    out.merge_duplicates();
    return out;
}

CoherentTwoMode classical_bs_transform(const CoherentTwoMode& c) {
    CoherentTwoMode out = c;
    for (auto& br : out.branches) {
        cplx a1 = br.alpha1, a2 = br.alpha2;
        br.alpha1 = kInvSqrt2 * (a1 + kI * a2);
        br.alpha2 = kInvSqrt2 * (kI * a1 + a2);
    }
    return out;
}

}  // namespace pwlab::mode
