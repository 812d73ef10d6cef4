#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "ftcons/graph_topology.hpp"

using namespace ftcons;

namespace {

// Smallest root of the characteristic polynomial, closed form for n <= 3.
double char_poly_min_root(const Eigen::MatrixXd& m) {
    if (m.rows() == 1) {
        return m(0, 0);
    }
    if (m.rows() == 2) {
        const double tr = m.trace();
        const double det = m.determinant();
        return 0.5 * (tr - std::sqrt(tr * tr - 4.0 * det));
    }
    // Symmetric 3x3: trigonometric solution of the depressed cubic.
    const double q = m.trace() / 3.0;
    const Eigen::Matrix3d b3 = (m - q * Eigen::Matrix3d::Identity()).eval();
    const double p = std::sqrt((b3 * b3).trace() / 6.0);
    if (p == 0.0) {
        return q;
    }
    const double r = std::clamp((b3 / p).determinant() / 2.0, -1.0, 1.0);
    const double phi = std::acos(r) / 3.0;
    return q + 2.0 * p * std::cos(phi + 2.0 * std::numbers::pi / 3.0);
}

TopologySpec random_connected(std::mt19937_64& rng, std::size_t n) {
    std::uniform_real_distribution<double> w(0.1, 3.0);
    std::bernoulli_distribution coin(0.4);
    TopologySpec s;
    s.n_followers = n;
    std::vector<std::size_t> parent_of(n, 0);
    for (std::size_t i = 1; i < n; ++i) {
        std::uniform_int_distribution<std::size_t> parent(0, i - 1);
        parent_of[i] = parent(rng);
        s.edges.push_back({parent_of[i], i, w(rng)});
    }
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            if (parent_of[j] != i && coin(rng)) {
                s.edges.push_back({i, j, w(rng)});
            }
        }
    }
    s.leader_links.assign(n, 0.0);
    std::uniform_int_distribution<std::size_t> pick(0, n - 1);
    s.leader_links[pick(rng)] = w(rng);
    return s;
}

}  // namespace

TEST(BuildMatrices, SingleFollower) {
    const auto m = build_matrices({1, {}, {1.0}});
    EXPECT_EQ(m.laplacian(0, 0), 0.0);
    EXPECT_EQ(m.leader_matrix(0, 0), 1.0);
    EXPECT_DOUBLE_EQ(m.lambda_min, 1.0);
}

TEST(BuildMatrices, TwoFollowers) {
    const auto m = build_matrices({2, {{0, 1, 1.0}}, {1.0, 0.0}});
    Eigen::Matrix2d q;
    q << 1, -1, -1, 1;
    Eigen::Matrix2d mm;
    mm << 2, -1, -1, 1;
    EXPECT_TRUE(m.laplacian.isApprox(q));
    EXPECT_TRUE(m.leader_matrix.isApprox(mm));
    EXPECT_NEAR(m.lambda_min, (3.0 - std::sqrt(5.0)) / 2.0, 1e-12);
}

TEST(BuildMatrices, BundledFiveFollowerTopology) {
    const auto m = build_matrices(five_follower_topology());
    EXPECT_NEAR(m.lambda_min, 0.2907, 5e-5);
    EXPECT_NEAR(m.lambda_min, 0.2907246405630772, 1e-12);
}

TEST(BuildMatrices, Rejections) {
    EXPECT_THROW(build_matrices({0, {}, {}}), ValidationError);
    EXPECT_THROW(build_matrices({2, {{0, 1, 1.0}}, {1.0}}), ValidationError);
    EXPECT_THROW(build_matrices({2, {{0, 1, 1.0}}, {0.0, 0.0}}), ValidationError);
    EXPECT_THROW(build_matrices({2, {{0, 1, 1.0}}, {-1.0, 1.0}}), ValidationError);
    EXPECT_THROW(build_matrices({2, {{0, 2, 1.0}}, {1.0, 0.0}}), ValidationError);
    EXPECT_THROW(build_matrices({2, {{1, 1, 1.0}}, {1.0, 0.0}}), ValidationError);
    EXPECT_THROW(build_matrices({2, {{0, 1, 0.0}}, {1.0, 0.0}}), ValidationError);
    EXPECT_THROW(build_matrices({2, {{0, 1, 1.0}, {1, 0, 2.0}}, {1.0, 0.0}}), ValidationError);
    EXPECT_THROW(build_matrices({3, {{0, 1, 1.0}}, {1.0, 0.0, 0.0}}), ValidationError);
    EXPECT_NO_THROW(build_matrices({2, {{0, 1, 1.0}, {1, 0, 1.0}}, {1.0, 0.0}}));
}

TEST(BuildMatrices, DisconnectedWithFullLeaderCoverageIsAccepted) {
    const auto m = build_matrices({3, {{0, 1, 1.0}}, {1.0, 0.0, 2.0}});
    EXPECT_GT(m.lambda_min, 0.0);
}

TEST(Reachability, Examples) {
    const auto two = validate_root_reachability({4, {{0, 1, 1.0}, {2, 3, 1.0}}, {1, 0, 0, 0}});
    EXPECT_FALSE(two.reachable);
    EXPECT_EQ(two.unreachable, (std::vector<std::size_t>{2, 3}));
    EXPECT_NE(two.diagnostic.find("3 4"), std::string::npos);
    EXPECT_TRUE(validate_root_reachability({3, {{0, 1, 1.0}, {1, 2, 1.0}}, {1, 0, 0}}).reachable);
    EXPECT_TRUE(validate_root_reachability(
                    {5, {{0, 1, 1.0}, {1, 2, 1.0}, {2, 3, 1.0}, {3, 4, 1.0}}, {1, 0, 0, 0, 0}})
                    .reachable);
}

TEST(MinEigenvalue, Examples) {
    EXPECT_NEAR(min_eigenvalue(Eigen::MatrixXd::Identity(3, 3)), 1.0, 1e-15);
    Eigen::MatrixXd d = Eigen::Vector3d(0.2907, 5.0, 9.0).asDiagonal();
    EXPECT_NEAR(min_eigenvalue(d), 0.2907, 1e-15);
}

TEST(MinEigenvalue, RejectsNonSymmetric) {
    Eigen::MatrixXd m(2, 2);
    m << 1, 2, 0, 1;
    EXPECT_THROW(min_eigenvalue(m), ValidationError);
    EXPECT_THROW(min_eigenvalue(Eigen::MatrixXd(2, 3)), ValidationError);
}

TEST(MinEigenvalue, ReportsNonConvergence) {
    Eigen::MatrixXd m(3, 3);
    m << 2, 1, 0.5, 1, 3, 0.2, 0.5, 0.2, 1;
    try {
        symmetric_eigenvalues(m, {1, 1e-15});
        FAIL() << "expected ConvergenceError";
    } catch (const ConvergenceError& e) {
        EXPECT_EQ(e.iterations(), 1);
    }
}

TEST(MinEigenvalue, AgreesWithCharacteristicPolynomial) {
    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int n = 1; n <= 3; ++n) {
        for (int trial = 0; trial < 200; ++trial) {
            Eigen::MatrixXd a(n, n);
            for (int r = 0; r < n; ++r) {
                for (int c = r; c < n; ++c) {
                    a(r, c) = a(c, r) = u(rng);
                }
            }
            const double ref = char_poly_min_root(a);
            EXPECT_NEAR(min_eigenvalue(a), ref, 1e-9 * std::max(1.0, std::abs(ref)));
        }
    }
}

TEST(MinEigenvalue, Deterministic) {
    const auto spec = five_follower_topology();
    const double a = build_matrices(spec).lambda_min;
    const double b = build_matrices(spec).lambda_min;
    EXPECT_EQ(a, b);
}

TEST(TopologyProperties, RandomConnectedSpecs) {
    std::mt19937_64 rng(29);
    std::normal_distribution<double> g;
    for (int trial = 0; trial < 100; ++trial) {
        const std::size_t n = 2 + static_cast<std::size_t>(trial % 9);
        const auto m = build_matrices(random_connected(rng, n));
        EXPECT_GT(m.lambda_min, 0.0);
        const Eigen::VectorXd ones = Eigen::VectorXd::Ones(static_cast<Eigen::Index>(n));
        EXPECT_LT((m.laplacian * ones).cwiseAbs().maxCoeff(), 1e-12);
        for (int k = 0; k < 20; ++k) {
            Eigen::VectorXd v(static_cast<Eigen::Index>(n));
            for (Eigen::Index i = 0; i < v.size(); ++i) {
                v(i) = g(rng);
            }
            const double rayleigh = v.dot(m.leader_matrix * v) / v.dot(v);
            EXPECT_LE(m.lambda_min, rayleigh * (1.0 + 1e-12));
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> ref(m.leader_matrix);
        EXPECT_NEAR(m.lambda_min, ref.eigenvalues()(0), 1e-9 * ref.eigenvalues()(0) + 1e-13);
    }
}

TEST(MatrixCsv, HeaderAndRows) {
    Eigen::MatrixXd m(2, 3);
    m << 1, 2, 3, 4, 5, 0.1;
    std::ostringstream os;
    write_matrix_csv(os, m);
    EXPECT_EQ(os.str(), "0,1,2\n1,2,3\n4,5,0.10000000000000001\n");
}
