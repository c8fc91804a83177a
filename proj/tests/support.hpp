#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "probclone/states.hpp"

// Seeded generators shared by the unit and acceptance suites.
namespace testsupport {

inline probclone::Vector random_amplitudes(std::mt19937_64& rng, int dim) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    probclone::Vector v(dim);
    for (Eigen::Index i = 0; i < dim; ++i) {
        v(i) = probclone::Complex(gauss(rng), gauss(rng));
    }
    return v;
}

inline probclone::StateVector random_state(std::mt19937_64& rng, int dim) {
    for (;;) {
        probclone::Vector v = random_amplitudes(rng, dim);
        if (v.norm() > 1e-6) {
            return probclone::StateVector(std::move(v));
        }
    }
}

// Independent set with the minimum Gram eigenvalue bounded away from the
// independence threshold, so downstream tolerances have headroom.
inline probclone::StateSet random_independent_set(std::mt19937_64& rng, int n, int dim,
                                                  double min_eig = 1e-3) {
    for (;;) {
        std::vector<probclone::StateVector> states;
        states.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            states.push_back(random_state(rng, dim));
        }
        probclone::StateSet set(std::move(states));
        if (probclone::is_linearly_independent(set).min_eigenvalue > min_eig) {
            return set;
        }
    }
}

inline probclone::StateSet random_orthonormal_set(std::mt19937_64& rng, int n, int dim) {
    probclone::Matrix a(dim, n);
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (Eigen::Index r = 0; r < dim; ++r) {
        for (Eigen::Index c = 0; c < n; ++c) {
            a(r, c) = probclone::Complex(gauss(rng), gauss(rng));
        }
    }
    Eigen::HouseholderQR<probclone::Matrix> qr(a);
    probclone::Matrix q = qr.householderQ() * probclone::Matrix::Identity(dim, n);
    std::vector<probclone::StateVector> states;
    states.reserve(static_cast<std::size_t>(n));
    for (Eigen::Index c = 0; c < n; ++c) {
        states.push_back(probclone::StateVector(q.col(c)));
    }
    return probclone::StateSet(std::move(states));
}

inline double max_offdiag_overlap(const probclone::StateSet& set) {
    double best = 0.0;
    for (int i = 0; i < set.size(); ++i) {
        for (int j = i + 1; j < set.size(); ++j) {
            best = std::max(best, std::abs(probclone::inner(set[i], set[j])));
        }
    }
    return best;
}

inline probclone::StateSet random_nonorthogonal_independent_set(std::mt19937_64& rng, int n,
                                                                int dim, double min_eig = 1e-3) {
    for (;;) {
        probclone::StateSet set = random_independent_set(rng, n, dim, min_eig);
        if (max_offdiag_overlap(set) >= 0.01) {
            return set;
        }
    }
}

// Independent, non-orthogonal, and every pairwise overlap real positive
// (nonnegative amplitudes force this). The copy-count ordering
// eta*(m+1) < eta*(m) holds on this family; with complex overlaps it can
// fail outright (three states with symmetric overlap -t give
// eta*(3) = (1-2t)/(1-2t^3) > (1-2t)/(1+2t^2) = eta*(2)).
inline probclone::StateSet random_positive_overlap_set(std::mt19937_64& rng, int n, int dim,
                                                       double min_eig = 1e-3) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    for (;;) {
        std::vector<probclone::StateVector> states;
        states.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) {
            probclone::Vector v(dim);
            for (Eigen::Index k = 0; k < dim; ++k) {
                v(k) = probclone::Complex(std::abs(gauss(rng)), 0.0);
            }
            if (v.norm() < 1e-6) {
                break;
            }
            states.push_back(probclone::StateVector(std::move(v)));
        }
        if (static_cast<int>(states.size()) < n) {
            continue;
        }
        probclone::StateSet set(std::move(states));
        if (probclone::is_linearly_independent(set).min_eigenvalue > min_eig &&
            max_offdiag_overlap(set) >= 0.01) {
            return set;
        }
    }
}

// Dependent set that is generic, not degenerate. Exact duplicates keep
// X1 - eta*Xm positive semidefinite at every eta and so hide the
// dependency from the feasibility witness; every branch here leaves the
// dependency visible in the m-fold Gram matrices too.
//   n == 2: a phased duplicate, relative phase in [0.5, pi]
//   n > dim: an overfull set, pairwise overlaps capped at 0.99
//   else: an independent core plus a combination of all of it with
//         coefficient magnitudes in [0.4, 1.2], same overlap cap
inline probclone::StateSet random_dependent_set(std::mt19937_64& rng, int n, int dim) {
    std::uniform_real_distribution<double> mag(0.4, 1.2);
    std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
    std::uniform_real_distribution<double> twist(0.5, 3.141592653589793);
    std::uniform_int_distribution<int> position(0, n - 1);
    for (;;) {
        std::vector<probclone::StateVector> states;
        bool cap_overlaps = true;
        if (n == 2) {
            const probclone::StateVector base = random_state(rng, dim);
            const double theta = twist(rng);
            const probclone::Complex rot(std::cos(theta), std::sin(theta));
            states.push_back(base);
            states.push_back(probclone::StateVector(probclone::Vector(rot * base.amplitudes())));
            cap_overlaps = false;
        } else if (n > dim) {
            for (int i = 0; i < n; ++i) {
                states.push_back(random_state(rng, dim));
            }
        } else {
            for (int i = 0; i < n - 1; ++i) {
                states.push_back(random_state(rng, dim));
            }
            probclone::Vector combo = probclone::Vector::Zero(dim);
            for (const probclone::StateVector& s : states) {
                const double a = angle(rng);
                combo += mag(rng) * probclone::Complex(std::cos(a), std::sin(a)) *
                         s.amplitudes();
            }
            if (combo.norm() < 1e-3) {
                continue;
            }
            const int at = position(rng);
            states.insert(states.begin() + at, probclone::StateVector(std::move(combo)));
        }
        probclone::StateSet set(std::move(states));
        if (cap_overlaps && max_offdiag_overlap(set) > 0.99) {
            continue;
        }
        if (!probclone::is_linearly_independent(set).independent) {
            return set;
        }
    }
}

inline bool same_bits(const probclone::Vector& a, const probclone::Vector& b) {
    if (a.size() != b.size()) {
        return false;
    }
    for (Eigen::Index i = 0; i < a.size(); ++i) {
        if (a(i) != b(i)) {
            return false;
        }
    }
    return true;
}

inline bool same_bits(const probclone::Matrix& a, const probclone::Matrix& b) {
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        return false;
    }
    for (Eigen::Index r = 0; r < a.rows(); ++r) {
        for (Eigen::Index c = 0; c < a.cols(); ++c) {
            if (a(r, c) != b(r, c)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace testsupport
