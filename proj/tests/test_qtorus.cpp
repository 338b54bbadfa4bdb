#include "gen.hpp"
#include "rlam/qtorus.hpp"

#include <doctest.h>

using namespace rlam;
using testgen::uniform_int;

namespace {

const ExMat a2{{0, 1}, {-1, 0}};
const ExMat torus{{0, 2, -2}, {-2, 0, 2}, {2, -2, 0}};

ExMat random_exmat(int n, int bound = 2) {
    ExMat e(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.set(i, j, uniform_int(-bound, bound));
    return e;
}

QElem X(const QContext& c, int i, int p = 1) { return QElem::generator(c, i, p); }

Exps unit(int m, int i) {
    Exps e(m, 0);
    e[i] = 1;
    return e;
}

// Product of random generators, generator inverses and binomials.
QElem random_word(const QContext& c, int len) {
    QElem w = QElem::one(c.m);
    for (int t = 0; t < len; ++t) {
        int i = uniform_int(0, c.m - 1);
        switch (uniform_int(0, 2)) {
        case 0: w = q_mul(c, w, X(c, i, uniform_int(-2, 2))); break;
        case 1: w = q_mul(c, w, QElem::binomial(unit(c.m, i), {uniform_int(-3, 3), c.lambda == 0 ? uniform_int(-2, 2) : 0}, uniform_int(0, 1) ? 1 : -1)); break;
        default: w = w.scaled(QCoeff::monomial({uniform_int(-2, 2), 0}, rat(uniform_int(1, 3), 1)));
        }
    }
    return w;
}

QElem random_elem(const QContext& c) { return random_word(c, 3) + random_word(c, 2); }

} // namespace

TEST_CASE("Weyl ordered products") {
    QContext c = plain_context(a2);
    QElem x1 = X(c, 0), x2 = X(c, 1);
    CHECK(q_mul(c, x1, x2) == QElem::monomial({1, 1}, QCoeff::q_power(1)));
    CHECK(q_mul(c, x2, x1) == QElem::monomial({1, 1}, QCoeff::q_power(-1)));
    CHECK(q_mul(c, x1, x2) == q_mul(c, x2, x1).scaled(QCoeff::q_power(2)));
    CHECK(q_mul(c, x1, QElem::one(2)) == x1);
    QElem b = QElem::binomial({0, 1}, {3, 0}, 1), binv = QElem::binomial({0, 1}, {3, 0}, -1);
    CHECK(q_mul(c, b, binv) == QElem::one(2));
    CHECK(q_mul(c, binv, b) == QElem::one(2));
    CHECK(q_mul(c, x1, q_inverse(c, x1)) == QElem::one(2));
    // X^a B(k,m,s) = B(k, m + 2<a,e_k>, s) X^a
    CHECK(q_mul(c, x1, b) == q_mul(c, QElem::binomial({0, 1}, {5, 0}, 1), x1));
    CHECK(q_mul(c, x1, binv) == q_mul(c, QElem::binomial({0, 1}, {5, 0}, -1), x1));
}

TEST_CASE("Weyl product is associative") {
    for (int trial = 0; trial < 100; ++trial) {
        int n = uniform_int(2, 4);
        QContext c = plain_context(random_exmat(n, 3));
        auto rnd = [&] {
            Exps a(n);
            for (auto& v : a) v = uniform_int(-3, 3);
            return QElem::monomial(a, QCoeff::monomial({uniform_int(-2, 2), 0}, rat(uniform_int(1, 5), 1)));
        };
        QElem a = rnd(), b = rnd(), d = rnd();
        REQUIRE(q_mul(c, q_mul(c, a, b), d) == q_mul(c, a, q_mul(c, b, d)));
    }
}

TEST_CASE("words with factors multiply associatively") {
    for (int trial = 0; trial < 40; ++trial) {
        QContext c = plain_context(random_exmat(3));
        QElem a = random_elem(c), b = random_elem(c), d = random_elem(c);
        REQUIRE(q_mul(c, q_mul(c, a, b), d) == q_mul(c, a, q_mul(c, b, d)));
        QElem w = random_word(c, 4);
        REQUIRE(q_mul(c, w, q_inverse(c, w)) == QElem::one(3));
        REQUIRE(q_mul(c, q_inverse(c, w), w) == QElem::one(3));
    }
}

TEST_CASE("monomial part") {
    Seed s(ExMat{{0, 2, -1}, {-2, 0, 0}, {1, 0, 0}});
    QMap f = mu_prime(s, 0);
    QContext c = f.from;
    CHECK(f.images[0] == X(c, 0, -1));
    CHECK(f.images[1] == X(c, 1));
    CHECK(f.images[2] == QElem::monomial({1, 0, 1}));
    CHECK(f.images[2] == q_mul(c, X(c, 2), X(c, 0)).scaled(QCoeff::q_power(-1)));
    CHECK(f.to.form_q == mutate_exmat(s.exmat, 0).rows());
}

TEST_CASE("automorphism part") {
    Seed s(ExMat{{0, 1, -2, 0}, {-1, 0, 0, 0}, {2, 0, 0, 0}, {0, 0, 0, 0}});
    QMap f = mu_sharp(s, 1);
    QContext c = f.from;
    // ε_01 = 1: X_1 (1 + q^{-1} X_2)^{-1}
    QElem expect = q_mul(c, X(c, 0), QElem::binomial(unit(4, 1), {-1, 0}, -1));
    CHECK(f.images[0] == expect);
    CHECK(f.images[0].str() == "(1+q*X2)^-1*X1");
    CHECK(f.images[1] == X(c, 1));
    CHECK(f.images[3] == X(c, 3));
    // ε_20 = 2 with k = 0: X_3 (1 + q^{-1} X_1)^{-1} (1 + q^{-3} X_1)^{-1}
    QMap g = mu_sharp(s, 0);
    CHECK(g.images[2] == q_mul(c, q_mul(c, X(c, 2), QElem::binomial(unit(4, 0), {-1, 0}, -1)),
                               QElem::binomial(unit(4, 0), {-3, 0}, -1)));
    // ε_02 = -2 with k = 2: X_1 (1 + q X_3)(1 + q^3 X_3)
    QMap h = mu_sharp(s, 2);
    CHECK(h.images[0] == q_mul(c, q_mul(c, X(c, 0), QElem::binomial(unit(4, 2), {1, 0}, 1)),
                               QElem::binomial(unit(4, 2), {3, 0}, 1)));
    CHECK(h.images[0].str() == "(1+q^-3*X3)*(1+q^-1*X3)*X1");
}

TEST_CASE("classical limits") {
    Seed s(a2);
    QMap f = mu_sharp(s, 1);
    RatExpr z1 = RatExpr::variable(2, 0), one = RatExpr::constant(2, 1);
    CHECK(classical_limit(f.images[0]) == z1 * (one + RatExpr::variable(2, 1)).inverse());
    CHECK(classical_limit(QElem::one(3)) == RatExpr::constant(3, 1));
    for (int k = 0; k < 3; ++k) {
        QMap q = quantum_mutation(Seed(torus), k);
        PullbackMap p = classical_mutation(Seed(torus), k);
        for (int i = 0; i < 3; ++i) CHECK(classical_limit(q.images[i]) == p.images[i]);
    }
}

TEST_CASE("q to 1 limit of quantum composites equals the classical composite") {
    std::vector<ExMat> seeds{a2, ExMat{{0, -1}, {1, 0}}, ExMat{{0, 2}, {-2, 0}}, torus,
                             ExMat{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}}};
    for (int t = 0; t < 3; ++t) seeds.push_back(random_exmat(3, 1));
    long checked = 0;
    for (const auto& e : seeds) {
        Seed s(e);
        int max_depth = 5;
        for (int i = 0; i < e.rank(); ++i)
            for (int j = 0; j < e.rank(); ++j)
                if (e.rank() > 2 && std::abs(e(i, j)) > 1) max_depth = 4;
        struct Node {
            QMap q;
            PullbackMap p;
            Seed seed;
            int depth;
        };
        std::vector<Node> stack{{q_identity(plain_context(e)), identity_pullback(s), s, 0}};
        while (!stack.empty()) {
            Node nd = std::move(stack.back());
            stack.pop_back();
            for (int i = 0; i < e.rank(); ++i) {
                INFO("seed " << to_string(e) << " depth " << nd.depth << " generator " << i);
                REQUIRE(classical_limit(nd.q.images[i]) == nd.p.images[i]);
                ++checked;
            }
            if (nd.depth == max_depth) continue;
            for (int k = 0; k < e.rank(); ++k)
                stack.push_back({q_compose(nd.q, quantum_mutation(nd.seed, k)), compose_pullbacks(nd.p, classical_mutation(nd.seed, k)),
                                 nd.seed.apply(Mutation{k}), nd.depth + 1});
        }
    }
    CHECK(checked > 2000);
}

TEST_CASE("relation composites reduce to the identity at q = 1") {
    for (const auto& name : relation_names()) {
        ExMat e = name == "quadrilateral" ? ExMat{{0, 1, 0}, {-1, 0, 1}, {0, -1, 0}} : ExMat{{0, 1, -1}, {-1, 0, 2}, {1, -2, 0}};
        if (name == "pentagon") e = a2;
        QMap f = quantum_pullback_along(Seed(e), relation_word(name, e));
        REQUIRE(f.from == f.to);
        for (int i = 0; i < e.rank(); ++i) CHECK(classical_limit(f.images[i]) == RatExpr::variable(e.rank(), i));
    }
    // Mutating twice at k leaves the generator X_k itself fixed exactly.
    QMap twice = quantum_pullback_along(Seed(torus), {Mutation{1}, Mutation{1}});
    CHECK(twice.images[1] == QElem::generator(twice.from, 1));
    CHECK(is_identity(quantum_pullback_along(Seed(torus), relation_word("permutation", torus))));
}

TEST_CASE("star is an involutive anti-homomorphism") {
    std::vector<QContext> ctxs{plain_context(a2), plain_context(torus)};
    for (int lam = -1; lam <= 1; ++lam) {
        ctxs.push_back(lambda_context(a2, lam));
        ctxs.push_back(lambda_context(ExMat{{0, 1, -1}, {-1, 0, 2}, {1, -2, 0}}, lam));
    }
    for (const auto& c : ctxs) {
        for (int trial = 0; trial < 15; ++trial) {
            QElem x = random_elem(c), y = random_elem(c);
            INFO("lambda " << c.lambda << " x = " << x.str(c.names) << ", y = " << y.str(c.names));
            REQUIRE(q_canonical(c, q_star(c, q_star(c, x))) == q_canonical(c, x));
            REQUIRE(q_canonical(c, q_star(c, q_mul(c, x, y))) == q_canonical(c, q_mul(c, q_star(c, y), q_star(c, x))));
            REQUIRE(q_canonical(c, q_star(c, x + y)) == q_canonical(c, q_star(c, x) + q_star(c, y)));
        }
    }
}

TEST_CASE("star on generators and scalars") {
    QContext m = lambda_context(a2, -1), p = lambda_context(a2, 1), z = lambda_context(a2, 0);
    CHECK(q_star(m, QElem::generator(m, 0)) == QElem::generator(m, 0));
    CHECK(q_star(p, QElem::generator(p, lambda_index(2, 1, 0))) == QElem::generator(p, lambda_index(2, -1, 0)));
    CHECK(q_star(z, QElem::generator(z, lambda_index(2, -1, 1))) == QElem::generator(z, lambda_index(2, -1, 1, true)));
    QElem qm = QElem::one(4).scaled(QCoeff::q_power(1));
    CHECK(q_star(m, qm) == QElem::one(4).scaled(QCoeff::q_power(-1)));
    CHECK(q_star(p, qm) == qm);
    CHECK(q_star(z, QElem::one(8).scaled(QCoeff::q_power(1))) == QElem::one(8).scaled(QCoeff::monomial({0, -1})));
}

TEST_CASE("the q rule fixing q for lambda = -1 is not an involutive anti-homomorphism") {
    QContext c = lambda_context(a2, -1);
    c.star_qmap = kQIdentity;
    QElem xy = q_mul(c, QElem::generator(c, 0), QElem::generator(c, 1));
    CHECK_FALSE(q_star(c, q_star(c, xy)) == xy);
    c.star_qmap = lambda_context(a2, -1).star_qmap;
    CHECK(q_star(c, q_star(c, xy)) == xy);
}

TEST_CASE("doubled mutation blocks") {
    Seed s(ExMat{{0, 1, -2}, {-1, 0, 1}, {2, -1, 0}});
    const int n = 3;
    for (int lam = -1; lam <= 1; ++lam) {
        QContext c = lambda_context(s.exmat, lam);
        for (int k = 0; k < n; ++k) {
            auto plus = mu_quantum_lambda(s, k, lam, 1), minus = mu_quantum_lambda(s, k, lam, -1);
            QMap mu = quantum_mutation(s, k);
            // (+) block: the undoubled formulas with X_i → Z_i^(+), q → q_Λ.
            std::vector<std::string> names;
            for (int i = 0; i < n; ++i) names.push_back(c.names[lambda_index(n, 1, i)]);
            for (int i = 0; i < n; ++i) CHECK(plus[i].str(c.names) == mu.images[i].str(names));
            // (-) block: the (+) block with the other block and q_Λ → q_Λ^{-1}.
            QMap swap{c, c, {}, {{{-1, 0}, {0, 1}}}};
            for (int a = 0; a < c.m; ++a) {
                int b = a < n ? a + n : (a < 2 * n ? a - n : a);
                swap.images.push_back(QElem::generator(c, b));
            }
            for (int i = 0; i < n; ++i) CHECK(q_apply(swap, plus[i]) == minus[i]);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j) CHECK(commute_by_support(c, plus[i], minus[j]));
            // q_Λ → 1 recovers the classical mutation in each block.
            PullbackMap cl = classical_mutation(s, k);
            std::vector<RatExpr> emb;
            for (int i = 0; i < n; ++i) emb.push_back(RatExpr::variable(c.m, lambda_index(n, 1, i)));
            for (int i = 0; i < n; ++i) CHECK(classical_limit(plus[i]) == cl.images[i].substitute(emb));
        }
    }
}

TEST_CASE("doubled mutations are star maps") {
    for (int lam = -1; lam <= 1; ++lam)
        for (const ExMat& e : {a2, torus, ExMat{{0, 1, -2}, {-1, 0, 1}, {2, -1, 0}}})
            for (int k = 0; k < e.rank(); ++k) {
                QMap f = lambda_mutation(Seed(e), k, lam);
                for (int a = 0; a < f.to.m; ++a) {
                    QElem g = QElem::generator(f.to, a);
                    INFO("lambda " << lam << " k " << k << " generator " << f.to.names[a]);
                    CHECK(q_canonical(f.from, q_star(f.from, q_apply(f, g))) == q_canonical(f.from, q_apply(f, q_star(f.to, g))));
                }
            }
}

TEST_CASE("maps reject foreign elements") {
    QMap f = quantum_mutation(Seed(a2), 0);
    CHECK_THROWS_AS(q_apply(f, QElem::one(3)), UsageError);
    CHECK_THROWS_AS(q_compose(f, quantum_mutation(Seed(torus), 0)), UsageError);
    QContext c = plain_context(a2);
    CHECK_THROWS_AS(q_inverse(c, X(c, 0) + X(c, 1)), DomainError);
}
