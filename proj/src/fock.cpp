// fock.cpp
// Basis indexing and state construction for truncated Fock spaces.

#include "qfock/fock.hpp"

#include <algorithm>
#include <sstream>

namespace qfock {

std::string to_string(const ModeId& m) {
    std::ostringstream os;
    os << m.momentum_label
       << (m.sector == Sector::plus ? "+" : "-")
       << (m.species == Species::particle ? "d" : "dbar");
    return os.str();
}

FockSpaceSpec::FockSpaceSpec(std::vector<ModeId> modes, std::vector<int> cutoffs)
    : modes_(std::move(modes)), cutoffs_(std::move(cutoffs)) {
    if (modes_.empty()) {
        throw validation_error("build_space: at least one mode is required");
    }
    if (modes_.size() != cutoffs_.size()) {
        throw validation_error("build_space: one cutoff per mode is required");
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (cutoffs_[i] < 1) {
            throw validation_error("build_space: cutoff for mode " +
                                   to_string(modes_[i]) + " must be >= 1");
        }
        for (std::size_t j = i + 1; j < modes_.size(); ++j) {
            if (modes_[i] == modes_[j]) {
                throw validation_error("build_space: duplicate mode " +
                                       to_string(modes_[i]));
            }
        }
    }
    dim_ = 1;
    for (int c : cutoffs_) {
        const auto levels = static_cast<std::size_t>(c) + 1;
        if (dim_ > hard_dimension_limit / levels) {
            throw resource_error(
                "build_space: dimension exceeds the hard limit of " +
                std::to_string(hard_dimension_limit) + " basis states");
        }
        dim_ *= levels;
    }
    strides_.assign(modes_.size(), 1);
    for (std::size_t i = modes_.size(); i-- > 1;) {
        strides_[i - 1] = strides_[i] * (static_cast<std::size_t>(cutoffs_[i]) + 1);
    }
}

std::size_t FockSpaceSpec::mode_position(const ModeId& m) const {
    auto it = std::find(modes_.begin(), modes_.end(), m);
    if (it == modes_.end()) {
        throw validation_error("unknown mode " + to_string(m));
    }
    return static_cast<std::size_t>(it - modes_.begin());
}

bool FockSpaceSpec::has_mode(const ModeId& m) const {
    return std::find(modes_.begin(), modes_.end(), m) != modes_.end();
}

std::size_t FockSpaceSpec::index_of(std::span<const int> occupations) const {
    if (occupations.size() != modes_.size()) {
        throw validation_error("index_of: occupation list length mismatch");
    }
    std::size_t idx = 0;
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        if (occupations[i] < 0 || occupations[i] > cutoffs_[i]) {
            throw validation_error("index_of: occupation out of range for mode " +
                                   to_string(modes_[i]));
        }
        idx += static_cast<std::size_t>(occupations[i]) * strides_[i];
    }
    return idx;
}

std::vector<int> FockSpaceSpec::occupations_of(std::size_t index) const {
    std::vector<int> occ(modes_.size());
    occupations_of(index, occ);
    return occ;
}

void FockSpaceSpec::occupations_of(std::size_t index, std::span<int> out) const {
    if (index >= dim_) {
        throw validation_error("occupations_of: basis index out of range");
    }
    for (std::size_t i = 0; i < modes_.size(); ++i) {
        out[i] = static_cast<int>((index / strides_[i]) %
                                  (static_cast<std::size_t>(cutoffs_[i]) + 1));
    }
}

SpacePtr build_space(std::vector<ModeId> modes, int uniform_cutoff) {
    std::vector<int> cutoffs(modes.size(), uniform_cutoff);
    return std::make_shared<const FockSpaceSpec>(std::move(modes), std::move(cutoffs));
}

SpacePtr build_space(std::vector<ModeId> modes, std::vector<int> cutoffs) {
    return std::make_shared<const FockSpaceSpec>(std::move(modes), std::move(cutoffs));
}

StateVector zero_state(const SpacePtr& space) {
    return {space, Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(space->dim()))};
}

StateVector basis_state(const SpacePtr& space, std::span<const int> occupations) {
    StateVector v = zero_state(space);
    v.amplitudes[static_cast<Eigen::Index>(space->index_of(occupations))] = cd(1.0, 0.0);
    return v;
}

double norm(const StateVector& v) {
    return v.amplitudes.norm();
}

StateVector normalized(const StateVector& v) {
    const double n = norm(v);
    if (n == 0.0) {
        throw validation_error("normalized: zero state has no normalization");
    }
    return {v.space, v.amplitudes / n};
}

void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what) {
    if (a == b) {
        return;
    }
    if (!a || !b || !(*a == *b)) {
        throw validation_error(std::string(what) + ": space mismatch");
    }
}

} // namespace qfock
