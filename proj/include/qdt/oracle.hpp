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
 * Brute-force verification path. Every probability is recomputed from
 * explicit dense operators and matrix products; nothing here calls into
 * measure.hpp.
 */
#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "errors.hpp"
#include "hilbert.hpp"

namespace qdt::oracle {

/// Default largest dimension the oracle is run on.
inline constexpr std::size_t default_dimension_cap = 64;

/// Square complex matrix, row-major.
class DenseOperator {
  public:
    explicit DenseOperator(std::size_t dim) : dim_(dim), data_(dim * dim) {}

    static DenseOperator identity(std::size_t dim) {
        DenseOperator m(dim);
        for (std::size_t i = 0; i < dim; ++i) {
            m(i, i) = 1.0;
        }
        return m;
    }

    /// |u><v|
    static DenseOperator outer(const StateVector &u, const StateVector &v) {
        if (u.size() != v.size()) {
            throw DimensionError("outer product of vectors of unequal dimension");
        }
        DenseOperator m(u.size());
        for (std::size_t i = 0; i < u.size(); ++i) {
            for (std::size_t j = 0; j < v.size(); ++j) {
                m(i, j) = u[i] * std::conj(v[j]);
            }
        }
        return m;
    }

    /// |e_a><e_a|
    static DenseOperator basis_projector(std::size_t index, std::size_t dim) {
        const auto e = basis_vector(index, dim);
        return outer(e, e);
    }

    [[nodiscard]] std::size_t dimension() const noexcept { return dim_; }
    Amplitude &operator()(std::size_t r, std::size_t c) {
        return data_[r * dim_ + c];
    }
    const Amplitude &operator()(std::size_t r, std::size_t c) const {
        return data_[r * dim_ + c];
    }

    DenseOperator &operator+=(const DenseOperator &o) {
        check_same(o);
        for (std::size_t i = 0; i < data_.size(); ++i) {
            data_[i] += o.data_[i];
        }
        return *this;
    }

    friend DenseOperator operator+(DenseOperator a, const DenseOperator &b) {
        a += b;
        return a;
    }

    friend DenseOperator operator-(DenseOperator a, const DenseOperator &b) {
        a.check_same(b);
        for (std::size_t i = 0; i < a.data_.size(); ++i) {
            a.data_[i] -= b.data_[i];
        }
        return a;
    }

    /// Full matrix product. Zero entries of the left factor are skipped,
    /// which keeps projector sandwiches at O(dim^2).
    friend DenseOperator operator*(const DenseOperator &a, const DenseOperator &b) {
        a.check_same(b);
        const std::size_t n = a.dim_;
        DenseOperator out(n);
        for (std::size_t i = 0; i < n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                const Amplitude aik = a(i, k);
                if (aik == Amplitude{}) {
                    continue;
                }
                for (std::size_t j = 0; j < n; ++j) {
                    out(i, j) += aik * b(k, j);
                }
            }
        }
        return out;
    }

    /// O|v>
    [[nodiscard]] StateVector apply(const StateVector &v) const {
        check_vector(v);
        StateVector out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                out[i] += (*this)(i, j) * v[j];
            }
        }
        return out;
    }

    /// Components of the bra <v|O, i.e. sum_i conj(v_i) O_ij.
    [[nodiscard]] std::vector<Amplitude> apply_bra(std::span<const Amplitude> bra) const {
        if (bra.size() != dim_) {
            throw DimensionError("bra of dimension " + std::to_string(bra.size()) +
                                 " applied to operator of dimension " +
                                 std::to_string(dim_));
        }
        std::vector<Amplitude> out(dim_);
        for (std::size_t i = 0; i < dim_; ++i) {
            if (bra[i] == Amplitude{}) {
                continue;
            }
            for (std::size_t j = 0; j < dim_; ++j) {
                out[j] += bra[i] * (*this)(i, j);
            }
        }
        return out;
    }

    [[nodiscard]] double max_abs() const noexcept {
        double worst = 0.0;
        for (const auto &x : data_) {
            worst = std::max(worst, std::abs(x));
        }
        return worst;
    }

    /// max_ij |O_ij - conj(O_ji)|
    [[nodiscard]] double hermitian_max_dev() const noexcept {
        double worst = 0.0;
        for (std::size_t i = 0; i < dim_; ++i) {
            for (std::size_t j = 0; j < dim_; ++j) {
                worst = std::max(worst,
                                 std::abs((*this)(i, j) - std::conj((*this)(j, i))));
            }
        }
        return worst;
    }

  private:
    void check_same(const DenseOperator &o) const {
        if (o.dim_ != dim_) {
            throw DimensionError("operators of dimension " + std::to_string(dim_) +
                                 " and " + std::to_string(o.dim_));
        }
    }
    void check_vector(const StateVector &v) const {
        if (v.size() != dim_) {
            throw DimensionError("vector of dimension " + std::to_string(v.size()) +
                                 " for operator of dimension " +
                                 std::to_string(dim_));
        }
    }

    std::size_t dim_;
    std::vector<Amplitude> data_;
};

/// P(pi) = |pi><pi|
inline DenseOperator dense_prospect_operator(const StateVector &prospect) {
    return DenseOperator::outer(prospect, prospect);
}

/// P(e_a) P(pi) P(e_a) as an explicit triple product.
inline DenseOperator dense_conjunction_operator(const StateVector &prospect,
                                                std::size_t basis_index) {
    const auto pe = DenseOperator::basis_projector(basis_index, prospect.size());
    return pe * dense_prospect_operator(prospect) * pe;
}

/// <psi|O|psi>
inline Amplitude dense_expectation(const DenseOperator &op, const StateVector &psi) {
    const auto o_psi = op.apply(psi);
    Amplitude acc{};
    for (std::size_t i = 0; i < psi.size(); ++i) {
        acc += std::conj(psi[i]) * o_psi[i];
    }
    return acc;
}

inline Amplitude dense_expectation(const DenseOperator &op, const StateOfMind &psi) {
    return dense_expectation(op, psi.vector());
}

/**
 * @brief q(pi) as sum_{a != b} <psi|P(e_a) P(pi) P(e_b)|psi>.
 *
 * The bra <psi|P(e_a)P(pi) is formed by two operator applications for each
 * a, the ket P(e_b)|psi> by one for each b, and every ordered pair a != b is
 * contracted explicitly.
 */
inline Amplitude dense_interference_complex(const StateVector &prospect,
                                            const StateOfMind &psi) {
    const std::size_t dim = prospect.size();
    if (psi.size() != dim) {
        throw DimensionError("prospect and state of mind differ in dimension");
    }
    const auto p_pi = dense_prospect_operator(prospect);

    std::vector<Amplitude> psi_bra(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        psi_bra[i] = std::conj(psi[i]);
    }
    std::vector<StateVector> kets;
    std::vector<DenseOperator> projectors;
    kets.reserve(dim);
    projectors.reserve(dim);
    for (std::size_t b = 0; b < dim; ++b) {
        projectors.push_back(DenseOperator::basis_projector(b, dim));
        kets.push_back(projectors.back().apply(psi.vector()));
    }

    Amplitude sum{};
    for (std::size_t a = 0; a < dim; ++a) {
        const auto bra = p_pi.apply_bra(projectors[a].apply_bra(psi_bra));
        for (std::size_t b = 0; b < dim; ++b) {
            if (a == b) {
                continue;
            }
            Amplitude term{};
            for (std::size_t i = 0; i < dim; ++i) {
                term += bra[i] * kets[b][i];
            }
            sum += term;
        }
    }
    return sum;
}

inline double dense_interference(const StateVector &prospect, const StateOfMind &psi) {
    return dense_interference_complex(prospect, psi).real();
}

/// max entry of |sum_{n,a} P(e_a) P(pi_n) P(e_a) - 1|
inline double resolution_of_identity_check(std::span<const StateVector> prospects) {
    if (prospects.empty()) {
        throw InvalidScenario("no prospects");
    }
    const std::size_t dim = prospects.front().size();
    DenseOperator sum(dim);
    for (const auto &pi : prospects) {
        if (pi.size() != dim) {
            throw DimensionError("prospect states of unequal dimension");
        }
        for (std::size_t a = 0; a < dim; ++a) {
            sum += dense_conjunction_operator(pi, a);
        }
    }
    return (sum - DenseOperator::identity(dim)).max_abs();
}

struct OracleProspect {
    double p{};
    std::vector<double> conjunction;
    double q{};
    /// largest imaginary part seen among the expectations
    double imag_residue{};
};

struct OracleResult {
    std::vector<OracleProspect> prospects;
    double identity_residual{};
    double hermitian_max_dev{};
};

/// Recompute every probability of a scenario from dense operators.
inline OracleResult evaluate(std::span<const StateVector> prospects,
                             const StateOfMind &psi,
                             std::size_t dimension_cap = default_dimension_cap) {
    if (psi.size() > dimension_cap) {
        throw DimensionError("dimension " + std::to_string(psi.size()) +
                             " exceeds the oracle cap of " +
                             std::to_string(dimension_cap));
    }
    OracleResult out;
    for (const auto &pi : prospects) {
        OracleProspect r;
        const auto op = dense_prospect_operator(pi);
        out.hermitian_max_dev = std::max(out.hermitian_max_dev, op.hermitian_max_dev());
        const auto p = dense_expectation(op, psi);
        r.p = p.real();
        r.imag_residue = std::abs(p.imag());
        r.conjunction.resize(pi.size());
        for (std::size_t a = 0; a < pi.size(); ++a) {
            const auto conj_op = dense_conjunction_operator(pi, a);
            const auto pa = dense_expectation(conj_op, psi);
            r.conjunction[a] = pa.real();
            r.imag_residue = std::max(r.imag_residue, std::abs(pa.imag()));
        }
        const auto q = dense_interference_complex(pi, psi);
        r.q = q.real();
        r.imag_residue = std::max(r.imag_residue, std::abs(q.imag()));
        out.prospects.push_back(std::move(r));
    }
    out.identity_residual = resolution_of_identity_check(prospects);
    return out;
}

} // namespace qdt::oracle
