#include "gen.hpp"
#include "rlam/qmatrix.hpp"

#include <doctest.h>

using namespace rlam;
using testgen::uniform_int;

namespace {

const ExMat a2{{0, 1}, {-1, 0}};
const ExMat torus{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};
const ExMat path3{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}};
const ExMat rank3{{0, 1, -1}, {-1, 0, 2}, {1, -2, 0}};

ExMat random_exmat(int n, int bound) {
    ExMat e(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.set(i, j, uniform_int(-bound, bound));
    return e;
}

} // namespace

TEST_CASE("skew normal form") {
    for (int trial = 0; trial < 60; ++trial) {
        int n = uniform_int(1, 6);
        ExMat e = random_exmat(n, 4);
        auto f = skew_normal_form(e);
        std::vector<std::vector<long>> B(n, std::vector<long>(n, 0));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int a = 0; a < n; ++a)
                    for (int b = 0; b < n; ++b) B[i][j] += f.U[i][a] * e(a, b) * f.U[j][b];
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                long expect = 0;
                int t = i / 2;
                if (t < static_cast<int>(f.d.size()) && j / 2 == t && i != j) expect = i % 2 == 0 ? f.d[t] : -f.d[t];
                REQUIRE(B[i][j] == expect);
            }
        for (long d : f.d) CHECK(d > 0);
    }
    CHECK(skew_normal_form(torus).d == std::vector<long>{2});
    CHECK(skew_normal_form(a2).d == std::vector<long>{1});
    CHECK(skew_normal_form(ExMat(3)).d.empty());
}

TEST_CASE("clock and shift models") {
    MatrixModel m = build_matrix_model(a2, 5);
    CHECK(m.dim == 5);
    CHECK(m.residual <= 1e-10);
    CHECK(std::abs(m.q * m.q - std::polar(1.0, 2 * M_PI / 5)) < 1e-14);
    Eigen::MatrixXcd lhs = m.gens[0] * m.gens[1], rhs = m.q * m.q * m.gens[1] * m.gens[0];
    CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());

    MatrixModel z = build_matrix_model(ExMat(3), 5);
    CHECK(z.dim == 1);
    for (const auto& g : z.gens) CHECK(g.isDiagonal());

    MatrixModel t = build_matrix_model(torus, 7);
    CHECK(t.residual <= 1e-10);
    MatrixModel r = build_matrix_model(random_exmat(4, 3), 11);
    CHECK(r.residual <= 1e-10);

    CHECK_THROWS_AS(build_matrix_model(a2, 6), UsageError);
    CHECK_THROWS_WITH_AS(build_matrix_model(ExMat{{0, 3}, {-3, 0}}, 9), doctest::Contains("coprime"), UsageError);
}

TEST_CASE("matrix evaluation is multiplicative") {
    MatrixModel m = build_matrix_model(rank3, 7, 3);
    QContext c = m.ctx;
    auto word = [&] {
        QElem w = QElem::one(3);
        for (int t = 0; t < 4; ++t) {
            int i = uniform_int(0, 2);
            Exps e(3, 0);
            e[i] = 1;
            w = q_mul(c, w, uniform_int(0, 1) ? QElem::generator(c, i, uniform_int(-2, 2))
                                               : QElem::binomial(e, {uniform_int(-3, 3), 0}, uniform_int(0, 1) ? 1 : -1));
        }
        return w;
    };
    for (int trial = 0; trial < 30; ++trial) {
        QElem x = word() + word(), y = word();
        Eigen::MatrixXcd lhs = m.eval(q_mul(c, x, y)), rhs = m.eval(x) * m.eval(y);
        REQUIRE((lhs - rhs).norm() <= 1e-9 * rhs.norm());
        Eigen::MatrixXcd inv = m.eval(q_inverse(c, y)) * m.eval(y);
        REQUIRE((inv - Eigen::MatrixXcd::Identity(m.dim, m.dim)).norm() <= 1e-9 * m.dim);
    }
}

TEST_CASE("mutation relations in the matrix model") {
    struct Case {
        ExMat e;
        std::string rel;
        std::vector<int> Ns;
        double tol;
    };
    std::vector<Case> cases{{a2, "involution", {5, 7, 9}, 1e-8},
                            {path3, "quadrilateral", {5, 7, 9}, 1e-10},
                            {a2, "pentagon", {5, 7, 11}, 1e-8},
                            {ExMat{{0, -1}, {1, 0}}, "pentagon", {5, 7, 11}, 1e-8},
                            {rank3, "permutation", {5, 7, 9}, 1e-8},
                            {rank3, "relabel", {5, 7, 9}, 1e-8},
                            {torus, "involution", {5, 7, 9}, 1e-8}};
    for (const auto& cs : cases) {
        auto r = verify_relation_numeric(cs.e, relation_word(cs.rel, cs.e), cs.Ns, cs.tol);
        INFO(cs.rel << " on " << to_string(cs.e) << ": " << to_json(r).dump());
        CHECK(r.pass);
        CHECK(r.runs.size() == 3);
    }
}

TEST_CASE("a non-relation is detected") {
    // Four mutations on A2 return to the same matrix but not to the identity.
    auto r = verify_relation_numeric(a2, parse_moves("m1,m2,m1,m2", 2), {5, 7});
    CHECK_FALSE(r.pass);
    CHECK(r.max_deviation > 1e-1);
    CHECK_THROWS_AS(verify_relation_numeric(a2, parse_moves("m1,m2,m1,m2,m1", 2), {5}), UsageError);
}
