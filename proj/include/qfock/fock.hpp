// fock.hpp
// Truncated multi-mode bosonic Fock space: mode registry, lexicographic
// basis indexing, and state vectors over the occupation-number basis.

#pragma once

#include <complex>
#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "qfock/errors.hpp"

namespace qfock {

using cd = std::complex<double>;

enum class Sector { plus, minus };
enum class Species { particle, antiparticle };

inline Sector opposite(Sector s) {
    return s == Sector::plus ? Sector::minus : Sector::plus;
}

// One bosonic mode: momentum label plus the sector/species tags that the
// doubling and pairing layers key on.
struct ModeId {
    int momentum_label = 0;
    Sector sector = Sector::plus;
    Species species = Species::particle;

    friend bool operator==(const ModeId&, const ModeId&) = default;
};

std::string to_string(const ModeId& m);

// Registry of modes with per-mode occupation cutoffs. Basis order is
// lexicographic over mode declaration order, first mode most significant.
class FockSpaceSpec {
public:
    static constexpr std::size_t hard_dimension_limit = 10'000'000;

    FockSpaceSpec(std::vector<ModeId> modes, std::vector<int> cutoffs);

    std::size_t dim() const { return dim_; }
    std::size_t n_modes() const { return modes_.size(); }
    const std::vector<ModeId>& modes() const { return modes_; }
    const ModeId& mode(std::size_t i) const { return modes_[i]; }
    int cutoff(std::size_t i) const { return cutoffs_[i]; }
    std::size_t stride(std::size_t i) const { return strides_[i]; }

    // Position of a mode in declaration order; throws validation_error if absent.
    std::size_t mode_position(const ModeId& m) const;
    bool has_mode(const ModeId& m) const;

    // Basis index <-> occupation multi-index (bijective round trip).
    std::size_t index_of(std::span<const int> occupations) const;
    std::vector<int> occupations_of(std::size_t index) const;
    void occupations_of(std::size_t index, std::span<int> out) const;

    friend bool operator==(const FockSpaceSpec& a, const FockSpaceSpec& b) {
        return a.modes_ == b.modes_ && a.cutoffs_ == b.cutoffs_;
    }

private:
    std::vector<ModeId> modes_;
    std::vector<int> cutoffs_;
    std::vector<std::size_t> strides_;
    std::size_t dim_ = 0;
};

using SpacePtr = std::shared_ptr<const FockSpaceSpec>;

SpacePtr build_space(std::vector<ModeId> modes, int uniform_cutoff);
SpacePtr build_space(std::vector<ModeId> modes, std::vector<int> cutoffs);

// Complex amplitudes over the occupation-number basis of a space.
struct StateVector {
    SpacePtr space;
    Eigen::VectorXcd amplitudes;
};

StateVector zero_state(const SpacePtr& space);
StateVector basis_state(const SpacePtr& space, std::span<const int> occupations);

double norm(const StateVector& v);
StateVector normalized(const StateVector& v);

// Throws validation_error unless both states live on structurally equal spaces.
void require_same_space(const SpacePtr& a, const SpacePtr& b, const char* what);

} // namespace qfock
