// Copyright 2026 The QDT Authors

// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at

//     http://www.apache.org/licenses/LICENSE-2.0

// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
/**
 * @file
 * Mode spaces, the tensor-product mind space and dense complex state
 * vectors over its elementary-prospect basis.
 */
#pragma once

#include <cmath>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algebra.hpp"
#include "errors.hpp"

namespace qdt {

inline constexpr double default_unit_tolerance = 1e-10;

/**
 * @brief Tensor product of the mode spaces of every factor.
 *
 * The basis is the list of elementary prospects in row-major order, so the
 * basis index of (j_1, ..., j_L) is sum_k j_k * prod_{m>k} M_m.
 */
class MindSpace {
  public:
    explicit MindSpace(std::vector<ActionFactor> factors)
        : factors_(std::move(factors)), dims_(qdt::factor_dims(factors_)),
          basis_(enumerate_elementary(std::span<const std::size_t>(dims_))) {}

    /// Space with anonymous factors "f<k>" and modes "m<j>".
    static MindSpace from_dims(const std::vector<std::size_t> &dims) {
        std::vector<ActionFactor> factors;
        for (std::size_t k = 0; k < dims.size(); ++k) {
            std::vector<std::string> labels;
            for (std::size_t j = 0; j < dims[k]; ++j) {
                labels.push_back("m" + std::to_string(j));
            }
            factors.push_back(make_factor(k, "f" + std::to_string(k), labels));
        }
        if (factors.empty()) {
            throw InvalidScenario("at least one action factor is required");
        }
        return MindSpace(std::move(factors));
    }

    [[nodiscard]] std::size_t dimension() const noexcept { return basis_.size(); }
    [[nodiscard]] const std::vector<std::size_t> &factor_dims() const noexcept {
        return dims_;
    }
    [[nodiscard]] const std::vector<ActionFactor> &factors() const noexcept {
        return factors_;
    }
    [[nodiscard]] const std::vector<ElementaryProspect> &basis() const noexcept {
        return basis_;
    }

  private:
    std::vector<ActionFactor> factors_;
    std::vector<std::size_t> dims_;
    std::vector<ElementaryProspect> basis_;
};

/// Dense complex vector in the mind space. The all-zeros vector is the
/// vacuum.
struct StateVector {
    std::vector<Amplitude> amplitudes;

    StateVector() = default;
    explicit StateVector(std::size_t dim) : amplitudes(dim) {}
    explicit StateVector(std::vector<Amplitude> a) : amplitudes(std::move(a)) {}
    StateVector(std::initializer_list<Amplitude> a) : amplitudes(a) {}

    [[nodiscard]] std::size_t size() const noexcept { return amplitudes.size(); }
    Amplitude &operator[](std::size_t i) { return amplitudes[i]; }
    const Amplitude &operator[](std::size_t i) const { return amplitudes[i]; }

    bool operator==(const StateVector &) const = default;
};

inline StateVector vacuum(const MindSpace &space) {
    return StateVector(space.dimension());
}

inline StateVector basis_vector(std::size_t index, std::size_t dim) {
    if (index >= dim) {
        throw IndexError("basis index " + std::to_string(index) +
                         " out of range for dimension " + std::to_string(dim));
    }
    StateVector v(dim);
    v[index] = 1.0;
    return v;
}

inline std::size_t basis_index(const ElementaryProspect &e,
                               const MindSpace &space) {
    const auto &dims = space.factor_dims();
    if (e.modes.size() != dims.size()) {
        throw IndexError("multi-index has " + std::to_string(e.modes.size()) +
                         " entries for " + std::to_string(dims.size()) +
                         " factors");
    }
    std::size_t index = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (e.modes[k] >= dims[k]) {
            throw IndexError("mode " + std::to_string(e.modes[k]) +
                             " out of range for factor " + std::to_string(k));
        }
        index = index * dims[k] + e.modes[k];
    }
    return index;
}

inline ElementaryProspect basis_unindex(std::size_t index,
                                        const MindSpace &space) {
    if (index >= space.dimension()) {
        throw IndexError("basis index " + std::to_string(index) +
                         " out of range for dimension " +
                         std::to_string(space.dimension()));
    }
    const auto &dims = space.factor_dims();
    ElementaryProspect e{std::vector<std::size_t>(dims.size())};
    for (std::size_t k = dims.size(); k-- > 0;) {
        e.modes[k] = index % dims[k];
        index /= dims[k];
    }
    return e;
}

/// <u|v>, conjugate-linear in `u`.
inline Amplitude inner(const StateVector &u, const StateVector &v) {
    if (u.size() != v.size()) {
        throw DimensionError("inner product of vectors of dimension " +
                             std::to_string(u.size()) + " and " +
                             std::to_string(v.size()));
    }
    Amplitude acc{};
    for (std::size_t i = 0; i < u.size(); ++i) {
        acc += std::conj(u[i]) * v[i];
    }
    return acc;
}

inline double norm_squared(const StateVector &v) noexcept {
    double acc = 0.0;
    for (const auto &a : v.amplitudes) {
        acc += std::norm(a);
    }
    return acc;
}

inline StateVector normalize(const StateVector &v) {
    const double n = std::sqrt(norm_squared(v));
    if (!(n > 0.0)) {
        throw ZeroNormError("cannot normalize a zero vector");
    }
    StateVector out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) {
        out[i] = v[i] / n;
    }
    return out;
}

/**
 * @brief Prospect state |pi>: spec amplitudes placed at their basis indices,
 * zero elsewhere. Not normalized.
 */
inline StateVector build_prospect_state(const ProspectSpec &spec,
                                        const MindSpace &space,
                                        bool allow_free_support = false) {
    std::span<const ActionFactor> factors(space.factors());
    validate_prospect(spec, factors, allow_free_support);
    StateVector v(space.dimension());
    for (const auto &[key, amp] : spec.amplitudes) {
        v[basis_index(key, space)] = amp;
    }
    return v;
}

/// Tensor product of per-factor mode-space vectors, row-major.
inline StateVector
build_product_state(const std::vector<std::vector<Amplitude>> &per_factor) {
    if (per_factor.empty()) {
        throw DimensionError("product state needs at least one factor");
    }
    std::vector<Amplitude> acc{Amplitude{1.0}};
    for (const auto &site : per_factor) {
        if (site.empty()) {
            throw DimensionError("empty factor vector in product state");
        }
        std::vector<Amplitude> next;
        next.reserve(acc.size() * site.size());
        for (const auto &a : acc) {
            for (const auto &s : site) {
                next.push_back(a * s);
            }
        }
        acc = std::move(next);
    }
    return StateVector(std::move(acc));
}

/// Product state checked against the mode counts of `space`.
inline StateVector
build_product_state(const std::vector<std::vector<Amplitude>> &per_factor,
                    const MindSpace &space) {
    const auto &dims = space.factor_dims();
    if (per_factor.size() != dims.size()) {
        throw DimensionError("product state has " +
                             std::to_string(per_factor.size()) +
                             " factor vectors for " +
                             std::to_string(dims.size()) + " factors");
    }
    for (std::size_t k = 0; k < dims.size(); ++k) {
        if (per_factor[k].size() != dims[k]) {
            throw DimensionError("factor vector " + std::to_string(k) +
                                 " has length " +
                                 std::to_string(per_factor[k].size()) +
                                 ", expected " + std::to_string(dims[k]));
        }
    }
    return build_product_state(per_factor);
}

/**
 * @brief The state of mind: a unit vector of the mind space.
 *
 * Construction fails with NormalizationError when the squared norm differs
 * from one by more than `tolerance`, and with ZeroNormError for the zero
 * vector.
 */
class StateOfMind {
  public:
    explicit StateOfMind(StateVector v,
                         double tolerance = default_unit_tolerance)
        : state_(std::move(v)) {
        const double n2 = norm_squared(state_);
        if (!(n2 > 0.0)) {
            throw ZeroNormError("state of mind is the zero vector");
        }
        if (!(std::abs(n2 - 1.0) <= tolerance)) {
            throw NormalizationError("state of mind is not normalized",
                                     {{"psi_norm", std::abs(n2 - 1.0)}});
        }
    }

    /// Normalizes first; only the zero vector is rejected.
    static StateOfMind normalized(const StateVector &v) {
        return StateOfMind(normalize(v));
    }

    [[nodiscard]] std::size_t size() const noexcept { return state_.size(); }
    [[nodiscard]] const StateVector &vector() const noexcept { return state_; }
    const Amplitude &operator[](std::size_t i) const { return state_[i]; }

  private:
    StateVector state_;
};

/**
 * @brief b_{n alpha}: rows are prospect states, columns elementary
 * prospects. Row-major storage.
 */
class AmplitudeMatrix {
  public:
    AmplitudeMatrix(std::size_t rows, std::size_t cols)
        : rows_(rows), cols_(cols), data_(rows * cols) {}

    static AmplitudeMatrix from_states(std::span<const StateVector> states) {
        if (states.empty()) {
            throw InvalidScenario("amplitude matrix needs at least one prospect");
        }
        AmplitudeMatrix m(states.size(), states.front().size());
        for (std::size_t n = 0; n < states.size(); ++n) {
            if (states[n].size() != m.cols_) {
                throw DimensionError("prospect states of unequal dimension");
            }
            for (std::size_t a = 0; a < m.cols_; ++a) {
                m(n, a) = states[n][a];
            }
        }
        return m;
    }

    [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
    [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
    Amplitude &operator()(std::size_t r, std::size_t c) {
        return data_[r * cols_ + c];
    }
    const Amplitude &operator()(std::size_t r, std::size_t c) const {
        return data_[r * cols_ + c];
    }

    [[nodiscard]] double column_norm_squared(std::size_t c) const {
        double acc = 0.0;
        for (std::size_t r = 0; r < rows_; ++r) {
            acc += std::norm((*this)(r, c));
        }
        return acc;
    }

    /// max_alpha | ||column alpha||^2 - 1 |
    [[nodiscard]] double column_norm_max_dev() const {
        double worst = 0.0;
        for (std::size_t c = 0; c < cols_; ++c) {
            worst = std::max(worst, std::abs(column_norm_squared(c) - 1.0));
        }
        return worst;
    }

    /// Max entry of |B^dagger B - 1|; zero iff columns are orthonormal.
    [[nodiscard]] double column_gram_max_dev() const {
        double worst = 0.0;
        for (std::size_t a = 0; a < cols_; ++a) {
            for (std::size_t b = a; b < cols_; ++b) {
                Amplitude g{};
                for (std::size_t r = 0; r < rows_; ++r) {
                    g += std::conj((*this)(r, a)) * (*this)(r, b);
                }
                if (a == b) {
                    g -= 1.0;
                }
                worst = std::max(worst, std::abs(g));
            }
        }
        return worst;
    }

  private:
    std::size_t rows_;
    std::size_t cols_;
    std::vector<Amplitude> data_;
};

} // namespace qdt
