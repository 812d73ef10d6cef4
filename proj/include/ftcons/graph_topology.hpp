#pragma once

// Leader-follower communication topology: adjacency, Laplacian, the leader
// matrix M = Q + diag(b) and its smallest eigenvalue.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <iomanip>
#include <limits>
#include <map>
#include <numeric>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ftcons/errors.hpp"

namespace ftcons {

/// Undirected follower edge, 0-based follower indices.
struct Edge {
    std::size_t i = 0;
    std::size_t j = 0;
    double weight = 1.0;

    friend bool operator==(const Edge&, const Edge&) = default;
};

struct TopologySpec {
    std::size_t n_followers = 0;
    std::vector<Edge> edges;
    /// b_i >= 0, weight of the leader -> follower i link.
    std::vector<double> leader_links;

    friend bool operator==(const TopologySpec&, const TopologySpec&) = default;
};

struct ConnectionMatrices {
    Eigen::MatrixXd adjacency;
    Eigen::MatrixXd laplacian;
    Eigen::MatrixXd leader_matrix;
    Eigen::VectorXd leader_links;
    double lambda_min = 0.0;

    [[nodiscard]] std::size_t size() const {
        return static_cast<std::size_t>(adjacency.rows());
    }
};

struct ReachabilityReport {
    bool reachable = false;
    /// Followers (0-based) in components that contain no b_i > 0.
    std::vector<std::size_t> unreachable;
    std::string diagnostic;
};

namespace detail {

class DisjointSet {
public:
    explicit DisjointSet(std::size_t n) : parent_(n) {
        std::iota(parent_.begin(), parent_.end(), std::size_t{0});
    }

    std::size_t find(std::size_t x) {
        while (parent_[x] != x) {
            parent_[x] = parent_[parent_[x]];
            x = parent_[x];
        }
        return x;
    }

    void unite(std::size_t a, std::size_t b) {
        a = find(a);
        b = find(b);
        if (a != b) {
            parent_[std::max(a, b)] = std::min(a, b);
        }
    }

private:
    std::vector<std::size_t> parent_;
};

}  // namespace detail

/// True iff every connected component of the follower graph contains a follower
/// linked to the leader, i.e. the augmented graph has a spanning tree rooted at
/// the leader. Edge indices out of range are ignored here; build_matrices
/// rejects them.
inline ReachabilityReport validate_root_reachability(const TopologySpec& spec) {
    const std::size_t n = spec.n_followers;
    detail::DisjointSet components(n);
    for (const Edge& e : spec.edges) {
        if (e.i < n && e.j < n && e.weight > 0.0) {
            components.unite(e.i, e.j);
        }
    }
    std::vector<bool> rooted(n, false);
    for (std::size_t i = 0; i < n && i < spec.leader_links.size(); ++i) {
        if (spec.leader_links[i] > 0.0) {
            rooted[components.find(i)] = true;
        }
    }

    ReachabilityReport report;
    for (std::size_t i = 0; i < n; ++i) {
        if (!rooted[components.find(i)]) {
            report.unreachable.push_back(i);
        }
    }
    report.reachable = report.unreachable.empty() && n > 0;
    if (n == 0) {
        report.diagnostic = "topology has no followers";
    } else if (!report.reachable) {
        std::ostringstream os;
        os << "followers not reachable from the leader:";
        for (std::size_t i : report.unreachable) {
            os << ' ' << (i + 1);
        }
        report.diagnostic = os.str();
    }
    return report;
}

struct EigenSolverOptions {
    int max_sweeps = 100;
    /// Off-diagonal Frobenius norm relative to the full norm at which sweeps stop.
    double tolerance = 1e-15;
};

/// All eigenvalues of a symmetric matrix, ascending, by cyclic Jacobi rotations.
inline std::vector<double> symmetric_eigenvalues(const Eigen::MatrixXd& m,
                                                 const EigenSolverOptions& opts = {}) {
    if (m.rows() != m.cols()) {
        throw ValidationError("symmetric_eigenvalues: matrix is not square");
    }
    const Eigen::Index n = m.rows();
    const double scale = std::max(m.cwiseAbs().maxCoeff(), std::numeric_limits<double>::min());
    for (Eigen::Index r = 0; r < n; ++r) {
        for (Eigen::Index c = r + 1; c < n; ++c) {
            if (std::abs(m(r, c) - m(c, r)) > 1e-12 * scale) {
                throw ValidationError("symmetric_eigenvalues: matrix is not symmetric");
            }
        }
    }

    Eigen::MatrixXd a = 0.5 * (m + m.transpose());
    const double total = a.norm();
    int sweep = 0;
    for (; sweep < opts.max_sweeps; ++sweep) {
        double off = 0.0;
        for (Eigen::Index r = 0; r < n; ++r) {
            for (Eigen::Index c = r + 1; c < n; ++c) {
                off += 2.0 * a(r, c) * a(r, c);
            }
        }
        if (std::sqrt(off) <= opts.tolerance * total) {
            break;
        }
        for (Eigen::Index p = 0; p < n - 1; ++p) {
            for (Eigen::Index q = p + 1; q < n; ++q) {
                const double apq = a(p, q);
                if (apq == 0.0) {
                    continue;
                }
                const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
                const double t = std::copysign(1.0, theta) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double akp = a(k, p);
                    const double akq = a(k, q);
                    a(k, p) = c * akp - s * akq;
                    a(k, q) = s * akp + c * akq;
                }
                for (Eigen::Index k = 0; k < n; ++k) {
                    const double apk = a(p, k);
                    const double aqk = a(q, k);
                    a(p, k) = c * apk - s * aqk;
                    a(q, k) = s * apk + c * aqk;
                }
            }
        }
    }
    if (sweep == opts.max_sweeps) {
        throw ConvergenceError("Jacobi eigensolver did not converge", sweep);
    }
    std::vector<double> eig(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
        eig[static_cast<std::size_t>(i)] = a(i, i);
    }
    std::sort(eig.begin(), eig.end());
    return eig;
}

inline double min_eigenvalue(const Eigen::MatrixXd& m, const EigenSolverOptions& opts = {}) {
    if (m.size() == 0) {
        throw ValidationError("min_eigenvalue: empty matrix");
    }
    return symmetric_eigenvalues(m, opts).front();
}

inline ConnectionMatrices build_matrices(const TopologySpec& spec) {
    const std::size_t n = spec.n_followers;
    if (n == 0) {
        throw ValidationError("topology: at least one follower required");
    }
    if (spec.leader_links.size() != n) {
        throw ValidationError("topology: leader_links must have one entry per follower");
    }
    bool any_link = false;
    for (std::size_t i = 0; i < n; ++i) {
        const double b = spec.leader_links[i];
        if (!(b >= 0.0) || !std::isfinite(b)) {
            throw ValidationError("topology: leader link b_" + std::to_string(i + 1) +
                                  " must be >= 0");
        }
        any_link = any_link || b > 0.0;
    }
    if (!any_link) {
        throw ValidationError("topology: at least one leader link b_i > 0 required");
    }

    // Each unordered pair may appear once, or twice with identical weights.
    std::map<std::pair<std::size_t, std::size_t>, double> weights;
    for (const Edge& e : spec.edges) {
        if (e.i >= n || e.j >= n) {
            throw ValidationError("topology: edge index out of range");
        }
        if (e.i == e.j) {
            throw ValidationError("topology: self-loop on follower " + std::to_string(e.i + 1));
        }
        if (!(e.weight > 0.0) || !std::isfinite(e.weight)) {
            throw ValidationError("topology: edge weight must be positive");
        }
        const auto key = std::minmax(e.i, e.j);
        const auto [it, inserted] = weights.emplace(key, e.weight);
        if (!inserted && it->second != e.weight) {
            throw ValidationError("topology: asymmetric weights on edge " +
                                  std::to_string(key.first + 1) + "-" +
                                  std::to_string(key.second + 1));
        }
    }

    const ReachabilityReport reach = validate_root_reachability(spec);
    if (!reach.reachable) {
        throw ValidationError("topology: " + reach.diagnostic);
    }

    const auto dim = static_cast<Eigen::Index>(n);
    ConnectionMatrices out;
    out.adjacency = Eigen::MatrixXd::Zero(dim, dim);
    for (const auto& [key, w] : weights) {
        const auto r = static_cast<Eigen::Index>(key.first);
        const auto c = static_cast<Eigen::Index>(key.second);
        out.adjacency(r, c) = w;
        out.adjacency(c, r) = w;
    }
    const Eigen::VectorXd degree = out.adjacency.rowwise().sum();
    out.laplacian = -out.adjacency;
    out.laplacian.diagonal() = degree;
    out.leader_links = Eigen::Map<const Eigen::VectorXd>(spec.leader_links.data(), dim);
    out.leader_matrix = out.laplacian;
    out.leader_matrix.diagonal() += out.leader_links;
    out.lambda_min = min_eigenvalue(out.leader_matrix);
    return out;
}

/// Row-major CSV with a header row of column indices.
inline void write_matrix_csv(std::ostream& os, const Eigen::MatrixXd& m) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        os << (c == 0 ? "" : ",") << c;
    }
    os << '\n' << std::setprecision(17);
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        for (Eigen::Index c = 0; c < m.cols(); ++c) {
            os << (c == 0 ? "" : ",") << m(r, c);
        }
        os << '\n';
    }
}

/// Five followers with unit weights: edges 1-2, 1-4, 1-5, 2-3 and leader links
/// to followers 1 and 3. lambda_min(M) = 0.29072...
inline TopologySpec five_follower_topology() {
    return TopologySpec{5,
                        {{0, 1, 1.0}, {0, 3, 1.0}, {0, 4, 1.0}, {1, 2, 1.0}},
                        {1.0, 0.0, 1.0, 0.0, 0.0}};
}

}  // namespace ftcons
