#include "tfd/modes.hpp"

#include <cmath>
#include <limits>
#include <string>

namespace tfd {

FockSpace::FockSpace(Statistics stat, std::vector<int> cutoffs)
    : stat_(stat), cutoffs_(std::move(cutoffs)) {
    if (cutoffs_.empty()) throw DimensionError("FockSpace: no modes given");
    for (std::size_t j = 0; j < cutoffs_.size(); ++j) {
        if (cutoffs_[j] < 1)
            throw DimensionError("FockSpace: cutoff must be >= 1 (mode " +
                                 std::to_string(j) + ")");
        if (stat_ == Statistics::Fermion && cutoffs_[j] != 1)
            throw DimensionError(
                "FockSpace: fermionic modes have cutoff 1 (mode " +
                std::to_string(j) + ")");
    }

    strides_.assign(cutoffs_.size(), 1);
    std::size_t dim = 1;
    for (std::size_t j = cutoffs_.size(); j-- > 0;) {
        strides_[j] = dim;
        const std::size_t radix = static_cast<std::size_t>(cutoffs_[j]) + 1;
        if (dim > std::numeric_limits<std::size_t>::max() / radix ||
            dim * radix > (std::size_t{1} << 26))
            throw DimensionError("FockSpace: basis size overflow");
        dim *= radix;
    }
    dim_ = dim;

    occs_.resize(dim_);
    totals_.resize(dim_);
    interior_.resize(dim_);
    std::vector<int> m(cutoffs_.size(), 0);
    for (std::size_t i = 0; i < dim_; ++i) {
        occs_[i] = m;
        int tot = 0;
        bool inter = true;
        for (std::size_t j = 0; j < m.size(); ++j) {
            tot += m[j];
            if (stat_ == Statistics::Boson && m[j] >= cutoffs_[j]) inter = false;
        }
        totals_[i] = tot;
        interior_[i] = inter ? 1 : 0;
        for (std::size_t j = m.size(); j-- > 0;) {
            if (++m[j] <= cutoffs_[j]) break;
            m[j] = 0;
        }
    }
}

std::size_t FockSpace::index(const std::vector<int>& m) const {
    if (m.size() != cutoffs_.size())
        throw DimensionError("FockSpace::index: wrong mode count");
    std::size_t i = 0;
    for (std::size_t j = 0; j < m.size(); ++j) {
        if (m[j] < 0 || m[j] > cutoffs_[j])
            throw DimensionError("FockSpace::index: occupation out of range");
        i += static_cast<std::size_t>(m[j]) * strides_[j];
    }
    return i;
}

bool FockSpace::lower(std::size_t i, int j, std::size_t& out, double& amp) const {
    const int mj = occs_[i][static_cast<std::size_t>(j)];
    if (mj == 0) return false;
    out = i - strides_[static_cast<std::size_t>(j)];
    if (stat_ == Statistics::Boson) {
        amp = std::sqrt(static_cast<double>(mj));
    } else {
        int sign = 1;
        for (int k = 0; k < j; ++k)
            if (occs_[i][static_cast<std::size_t>(k)] != 0) sign = -sign;
        amp = static_cast<double>(sign);
    }
    return true;
}

bool FockSpace::raise(std::size_t i, int j, std::size_t& out, double& amp) const {
    const int mj = occs_[i][static_cast<std::size_t>(j)];
    if (mj >= cutoffs_[static_cast<std::size_t>(j)]) return false;
    out = i + strides_[static_cast<std::size_t>(j)];
    if (stat_ == Statistics::Boson) {
        amp = std::sqrt(static_cast<double>(mj + 1));
    } else {
        int sign = 1;
        for (int k = 0; k < j; ++k)
            if (occs_[i][static_cast<std::size_t>(k)] != 0) sign = -sign;
        amp = static_cast<double>(sign);
    }
    return true;
}

}  // namespace tfd
