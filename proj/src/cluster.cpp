#include "rlam/cluster.hpp"
#include "rlam/rational.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <set>
#include <sstream>

namespace rlam {

ExMat::ExMat(int n) : n_(n), e_(static_cast<std::size_t>(n) * n, 0) {
    if (n < 0) throw UsageError("negative rank");
}

ExMat::ExMat(std::initializer_list<std::initializer_list<int>> rows) {
    std::vector<std::vector<int>> r;
    for (auto& row : rows) r.emplace_back(row);
    *this = from_rows(r);
}

ExMat ExMat::from_rows(const std::vector<std::vector<int>>& rows) {
    ExMat m(static_cast<int>(rows.size()));
    for (int i = 0; i < m.n_; ++i) {
        if (static_cast<int>(rows[i].size()) != m.n_)
            throw UsageError("exchange matrix row " + std::to_string(i) + " has wrong length");
        for (int j = 0; j < m.n_; ++j) m.e_[m.idx(i, j)] = rows[i][j];
    }
    for (int i = 0; i < m.n_; ++i)
        for (int j = 0; j < m.n_; ++j)
            if (m(i, j) != -m(j, i))
                throw UsageError("exchange matrix is not skew-symmetric at (" + std::to_string(i) +
                                 "," + std::to_string(j) + ")");
    return m;
}

std::size_t ExMat::idx(int i, int j) const {
    if (i < 0 || j < 0 || i >= n_ || j >= n_)
        throw UsageError("index out of range for rank " + std::to_string(n_));
    return static_cast<std::size_t>(i) * n_ + j;
}

void ExMat::set(int i, int j, int v) {
    if (i == j && v != 0) throw UsageError("diagonal of an exchange matrix must vanish");
    e_[idx(i, j)] = v;
    e_[idx(j, i)] = -v;
}

std::vector<std::vector<int>> ExMat::rows() const {
    std::vector<std::vector<int>> r(n_, std::vector<int>(n_));
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r[i][j] = (*this)(i, j);
    return r;
}

bool ExMat::is_zero() const {
    return std::all_of(e_.begin(), e_.end(), [](int v) { return v == 0; });
}

std::string to_string(const ExMat& e) {
    std::ostringstream os;
    os << '[';
    for (int i = 0; i < e.rank(); ++i) {
        os << (i ? ",[" : "[");
        for (int j = 0; j < e.rank(); ++j) os << (j ? "," : "") << e(i, j);
        os << ']';
    }
    os << ']';
    return os.str();
}

Permutation perm_identity(int n) {
    Permutation p(n);
    std::iota(p.begin(), p.end(), 0);
    return p;
}

void check_permutation(const Permutation& s, int n) {
    if (static_cast<int>(s.size()) != n)
        throw UsageError("permutation has size " + std::to_string(s.size()) + ", expected " +
                         std::to_string(n));
    std::vector<char> seen(n, 0);
    for (int v : s) {
        if (v < 0 || v >= n || seen[v]) throw UsageError("map is not a bijection on indices");
        seen[v] = 1;
    }
}

Permutation perm_compose(const Permutation& outer, const Permutation& inner) {
    check_permutation(outer, static_cast<int>(inner.size()));
    Permutation r(inner.size());
    for (std::size_t i = 0; i < inner.size(); ++i) r[i] = outer[inner[i]];
    return r;
}

Permutation perm_inverse(const Permutation& s) {
    check_permutation(s, static_cast<int>(s.size()));
    Permutation r(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) r[s[i]] = static_cast<int>(i);
    return r;
}

Permutation perm_transposition(int n, int i, int j) {
    Permutation p = perm_identity(n);
    std::swap(p.at(i), p.at(j));
    return p;
}

ExMat random_exmat(int n, int bound, std::mt19937_64& rng) {
    std::uniform_int_distribution<int> d(-bound, bound);
    ExMat e(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.set(i, j, d(rng));
    return e;
}

ExMat mutate_exmat(const ExMat& e, int k) {
    const int n = e.rank();
    if (k < 0 || k >= n) throw UsageError("mutation index out of range");
    ExMat r(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) {
            int v;
            if (i == k || j == k)
                v = -e(i, j);
            else {
                int s = e(i, k) * std::abs(e(k, j)) + std::abs(e(i, k)) * e(k, j);
                v = e(i, j) + s / 2;
            }
            r.set(i, j, v);
        }
    return r;
}

ExMat permute_exmat(const ExMat& e, const Permutation& sigma) {
    check_permutation(sigma, e.rank());
    ExMat r(e.rank());
    for (int i = 0; i < e.rank(); ++i)
        for (int j = i + 1; j < e.rank(); ++j) r.set(sigma[i], sigma[j], e(i, j));
    return r;
}

ExMat apply_move(const ExMat& e, const Move& m) {
    if (auto mu = std::get_if<Mutation>(&m)) return mutate_exmat(e, mu->k);
    return permute_exmat(e, std::get<Relabel>(m).sigma);
}

std::vector<Move> parse_moves(const std::string& text, int rank) {
    std::vector<Move> out;
    std::size_t pos = 0;
    auto fail = [&](const std::string& why) {
        throw UsageError("bad move list '" + text + "': " + why);
    };
    auto skip = [&] {
        while (pos < text.size() && (std::isspace(static_cast<unsigned char>(text[pos])) || text[pos] == ','))
            ++pos;
    };
    auto number = [&] {
        std::size_t start = pos;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) ++pos;
        if (start == pos) fail("expected an index at position " + std::to_string(start));
        int v = std::stoi(text.substr(start, pos - start));
        if (v < 1 || v > rank) fail("index " + std::to_string(v) + " out of range 1.." + std::to_string(rank));
        return v - 1;
    };
    skip();
    while (pos < text.size()) {
        char c = text[pos++];
        if (c == 'm' || c == 'M') {
            out.push_back(Mutation{number()});
        } else if (c == 'p' || c == 'P') {
            Permutation sigma = perm_identity(rank);
            bool any = false;
            while (pos < text.size() && text[pos] == '(') {
                ++pos;
                std::vector<int> cyc;
                for (;;) {
                    while (pos < text.size() && text[pos] == ' ') ++pos;
                    if (pos < text.size() && text[pos] == ')') break;
                    cyc.push_back(number());
                }
                ++pos;
                Permutation cp = perm_identity(rank);
                for (std::size_t i = 0; i < cyc.size(); ++i) cp[cyc[i]] = cyc[(i + 1) % cyc.size()];
                std::set<int> uniq(cyc.begin(), cyc.end());
                if (uniq.size() != cyc.size()) fail("repeated index in a cycle");
                sigma = perm_compose(sigma, cp);
                any = true;
            }
            if (!any) fail("permutation needs cycle notation like p(1 2)");
            out.push_back(Relabel{sigma});
        } else {
            fail(std::string("unknown move '") + c + "'");
        }
        skip();
    }
    return out;
}

std::string format_moves(const std::vector<Move>& moves) {
    std::string s;
    for (const auto& m : moves) {
        if (!s.empty()) s += ',';
        if (auto mu = std::get_if<Mutation>(&m)) {
            s += "m" + std::to_string(mu->k + 1);
            continue;
        }
        const auto& sigma = std::get<Relabel>(m).sigma;
        std::vector<char> done(sigma.size(), 0);
        std::string cyc;
        for (std::size_t i = 0; i < sigma.size(); ++i) {
            if (done[i] || sigma[i] == static_cast<int>(i)) continue;
            cyc += '(';
            for (std::size_t j = i; !done[j]; j = sigma[j]) {
                if (cyc.back() != '(') cyc += ' ';
                cyc += std::to_string(j + 1);
                done[j] = 1;
            }
            cyc += ')';
        }
        s += "p" + (cyc.empty() ? std::string("()") : cyc);
    }
    return s;
}

Seed::Seed(ExMat e, std::vector<std::string> labs) : exmat(std::move(e)), labels(std::move(labs)) {
    if (labels.empty())
        for (int i = 0; i < exmat.rank(); ++i) labels.push_back("X" + std::to_string(i + 1));
    if (static_cast<int>(labels.size()) != exmat.rank())
        throw UsageError("seed: 'labels' has " + std::to_string(labels.size()) + " entries for rank " +
                         std::to_string(exmat.rank()));
    std::set<std::string> uniq(labels.begin(), labels.end());
    if (uniq.size() != labels.size()) throw UsageError("seed: 'labels' are not distinct");
    initial = exmat;
}

Seed Seed::apply(const Move& m) const {
    Seed r = *this;
    r.exmat = apply_move(exmat, m);
    if (auto p = std::get_if<Relabel>(&m)) {
        std::vector<std::string> l(labels.size());
        for (std::size_t i = 0; i < labels.size(); ++i) l[p->sigma[i]] = labels[i];
        r.labels = std::move(l);
    }
    r.history.push_back(m);
    return r;
}

Seed Seed::apply(const std::vector<Move>& ms) const {
    Seed r = *this;
    for (const auto& m : ms) r = r.apply(m);
    return r;
}

bool Seed::history_consistent() const {
    ExMat e = initial;
    for (const auto& m : history) e = apply_move(e, m);
    return e == exmat;
}

nlohmann::json to_json(const Seed& s) {
    nlohmann::json j{{"rank", s.rank()}, {"epsilon", s.exmat.rows()}, {"labels", s.labels}};
    if (!s.history.empty()) j["history"] = format_moves(s.history);
    return j;
}

Seed seed_from_json(const nlohmann::json& j) {
    if (!j.is_object()) throw UsageError("seed: expected a JSON object");
    for (auto it = j.begin(); it != j.end(); ++it)
        if (it.key() != "rank" && it.key() != "epsilon" && it.key() != "labels" && it.key() != "history")
            throw UsageError("seed: unknown field '" + it.key() + "'");
    if (!j.contains("epsilon")) throw UsageError("seed: missing field 'epsilon'");
    const auto& ej = j.at("epsilon");
    if (!ej.is_array()) throw UsageError("seed: field 'epsilon' must be an array of rows");
    std::vector<std::vector<int>> rows;
    for (const auto& row : ej) {
        if (!row.is_array()) throw UsageError("seed: field 'epsilon' must be an array of rows");
        std::vector<int> r;
        for (const auto& v : row) {
            if (!v.is_number_integer()) throw UsageError("seed: field 'epsilon' has a non-integer entry");
            r.push_back(v.get<int>());
        }
        rows.push_back(std::move(r));
    }
    ExMat e;
    try {
        e = ExMat::from_rows(rows);
    } catch (const UsageError& err) {
        throw UsageError(std::string("seed: field 'epsilon': ") + err.what());
    }
    if (j.contains("rank")) {
        const auto& r = j.at("rank");
        if (!r.is_number_integer() || r.get<int>() != e.rank())
            throw UsageError("seed: field 'rank' does not match 'epsilon'");
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) {
        if (!j.at("labels").is_array()) throw UsageError("seed: field 'labels' must be an array");
        for (const auto& l : j.at("labels")) {
            if (!l.is_string()) throw UsageError("seed: field 'labels' must hold strings");
            labels.push_back(l.get<std::string>());
        }
    }
    Seed s(e, labels);
    if (j.contains("history")) {
        if (!j.at("history").is_string()) throw UsageError("seed: field 'history' must be a move string");
        // The stored matrix is the current one; history is informational only.
        s.history = parse_moves(j.at("history").get<std::string>(), e.rank());
        ExMat init = e;
        for (auto it = s.history.rbegin(); it != s.history.rend(); ++it) {
            if (auto mu = std::get_if<Mutation>(&*it))
                init = mutate_exmat(init, mu->k);
            else
                init = permute_exmat(init, perm_inverse(std::get<Relabel>(*it).sigma));
        }
        s.initial = init;
    }
    return s;
}

// Column-style integer elimination: U tracks the unimodular column operations.
std::vector<ThetaVec> kernel_vectors(const ExMat& e) {
    const int n = e.rank();
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n)), u(n, std::vector<BigInt>(n, 0));
    for (int i = 0; i < n; ++i) {
        u[i][i] = 1;
        for (int j = 0; j < n; ++j) a[i][j] = e(i, j);
    }
    auto col_op = [&](int c1, int c2, const BigInt& p, const BigInt& q, const BigInt& r, const BigInt& s) {
        // (col c1, col c2) <- (p*c1 + q*c2, r*c1 + s*c2)
        for (auto* m : {&a, &u})
            for (int i = 0; i < n; ++i) {
                BigInt x = (*m)[i][c1], y = (*m)[i][c2];
                (*m)[i][c1] = p * x + q * y;
                (*m)[i][c2] = r * x + s * y;
            }
    };
    int pivot = 0;
    for (int row = 0; row < n && pivot < n; ++row) {
        for (int c = pivot + 1; c < n; ++c) {
            if (a[row][c] == 0) continue;
            BigInt x = a[row][pivot], y = a[row][c], g, s, t;
            mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
            BigInt xg = x / g, yg = y / g;
            col_op(pivot, c, s, t, BigInt(-yg), xg);
        }
        if (a[row][pivot] != 0) ++pivot;
    }
    std::vector<std::vector<BigInt>> basis;
    for (int c = pivot; c < n; ++c) {
        std::vector<BigInt> v(n);
        for (int i = 0; i < n; ++i) v[i] = u[i][c];
        basis.push_back(v);
    }
    // Row Hermite normal form of the basis.
    const int m = static_cast<int>(basis.size());
    int r = 0;
    for (int col = 0; col < n && r < m; ++col) {
        for (int i = r + 1; i < m; ++i) {
            while (basis[i][col] != 0) {
                BigInt qt = basis[r][col] / basis[i][col];
                for (int k = 0; k < n; ++k) basis[r][k] -= qt * basis[i][k];
                std::swap(basis[r], basis[i]);
            }
        }
        if (basis[r][col] == 0) continue;
        if (basis[r][col] < 0)
            for (auto& v : basis[r]) v = -v;
        for (int i = 0; i < r; ++i) {
            BigInt qt;
            mpz_fdiv_q(qt.get_mpz_t(), basis[i][col].get_mpz_t(), basis[r][col].get_mpz_t());
            for (int k = 0; k < n; ++k) basis[i][k] -= qt * basis[r][k];
        }
        ++r;
    }
    std::vector<ThetaVec> out;
    for (const auto& b : basis) {
        ThetaVec t;
        for (const auto& v : b) t.coefficients.push_back(v.get_si());
        t.tag = "generic kernel vector";
        if (!in_kernel(e, t.coefficients)) throw NumericalError("kernel elimination produced a non-kernel vector");
        out.push_back(std::move(t));
    }
    return out;
}

bool in_kernel(const ExMat& e, const std::vector<long>& theta) {
    if (static_cast<int>(theta.size()) != e.rank()) throw UsageError("theta length differs from rank");
    for (int i = 0; i < e.rank(); ++i) {
        long s = 0;
        for (int j = 0; j < e.rank(); ++j) s += e(i, j) * theta[j];
        if (s != 0) return false;
    }
    return true;
}

Tri::Tri(int arcs, std::vector<std::array<int, 3>> triangles) : arcs_(arcs), tris_(std::move(triangles)) {
    build();
}

void Tri::build() {
    occurrences_.assign(arcs_, 0);
    for (std::size_t t = 0; t < tris_.size(); ++t) {
        const auto& tr = tris_[t];
        for (int s : tr)
            if (s < 0 || s >= arcs_) throw UsageError("triangle " + std::to_string(t) + " uses unknown arc");
        if (tr[0] == tr[1] || tr[1] == tr[2] || tr[0] == tr[2])
            throw UsageError("triangle " + std::to_string(t) + " does not have three distinct sides");
        for (int s : tr) ++occurrences_[s];
    }
    for (int a = 0; a < arcs_; ++a)
        if (occurrences_[a] < 1 || occurrences_[a] > 2)
            throw UsageError("arc " + std::to_string(a) + " bounds " + std::to_string(occurrences_[a]) +
                             " triangle sides");
    const int nv = 3 * static_cast<int>(tris_.size());
    std::vector<int> parent(nv);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    auto vert = [](int t, int j) { return 3 * t + (j % 3); };
    std::vector<std::vector<std::pair<int, int>>> sides(arcs_);
    for (int t = 0; t < static_cast<int>(tris_.size()); ++t)
        for (int j = 0; j < 3; ++j) sides[tris_[t][j]].push_back({t, j});
    for (int a = 0; a < arcs_; ++a) {
        if (sides[a].size() != 2) continue;
        auto [t1, j1] = sides[a][0];
        auto [t2, j2] = sides[a][1];
        parent[find(vert(t1, j1))] = find(vert(t2, j2 + 1));
        parent[find(vert(t1, j1 + 1))] = find(vert(t2, j2));
    }
    std::vector<int> id(nv, -1);
    punctures_ = 0;
    for (int v = 0; v < nv; ++v) {
        int r = find(v);
        if (id[r] < 0) id[r] = punctures_++;
    }
    ends_.assign(arcs_, {0, 0});
    for (int a = 0; a < arcs_; ++a) {
        auto [t, j] = sides[a][0];
        ends_[a] = {id[find(vert(t, j))], id[find(vert(t, j + 1))]};
    }
    if (closed()) {
        int num = arcs_ + 6 - 3 * punctures_;
        if (num < 0 || num % 6 != 0)
            throw UsageError("arc count inconsistent with a closed punctured surface");
    }
}

bool Tri::closed() const {
    return std::all_of(occurrences_.begin(), occurrences_.end(), [](int c) { return c == 2; });
}

bool Tri::is_boundary(int arc) const { return occurrences_.at(arc) == 1; }

int Tri::genus() const {
    if (!closed()) throw UsageError("genus is defined here for closed surfaces only");
    return (arcs_ + 6 - 3 * punctures_) / 6;
}

Tri Tri::canonical() const {
    auto tr = tris_;
    for (auto& t : tr) std::rotate(t.begin(), std::min_element(t.begin(), t.end()), t.end());
    std::sort(tr.begin(), tr.end());
    return Tri(arcs_, tr);
}

// a_ij: corners with side i followed by side j in the counterclockwise order.
ExMat exmat_from_tri(const Tri& t) {
    const int n = t.arc_count();
    std::vector<int> a(static_cast<std::size_t>(n) * n, 0);
    for (const auto& tr : t.triangles())
        for (int j = 0; j < 3; ++j) ++a[tr[j] * n + tr[(j + 1) % 3]];
    ExMat e(n);
    for (int i = 0; i < n; ++i)
        for (int j = i + 1; j < n; ++j) e.set(i, j, a[i * n + j] - a[j * n + i]);
    return e;
}

namespace {
struct FlipPlan {
    int t1, t2;
    std::array<int, 3> n1, n2;
};

FlipPlan plan_flip(const Tri& t, int k) {
    if (k < 0 || k >= t.arc_count()) throw UsageError("arc index out of range");
    if (t.is_boundary(k)) throw UsageError("arc " + std::to_string(k) + " is a boundary segment");
    std::vector<std::pair<int, int>> at;
    const auto& tr = t.triangles();
    for (int i = 0; i < static_cast<int>(tr.size()); ++i)
        for (int j = 0; j < 3; ++j)
            if (tr[i][j] == k) at.push_back({i, j});
    auto [t1, p] = at[0];
    auto [t2, q] = at[1];
    int a = tr[t1][(p + 1) % 3], b = tr[t1][(p + 2) % 3];
    int c = tr[t2][(q + 1) % 3], d = tr[t2][(q + 2) % 3];
    if (b == c || d == a)
        throw UsageError("flip at arc " + std::to_string(k) + " would create a self-folded triangle");
    return {t1, t2, {b, c, k}, {d, a, k}};
}
} // namespace

bool flippable(const Tri& t, int k) {
    try {
        plan_flip(t, k);
        return true;
    } catch (const UsageError&) {
        return false;
    }
}

Tri flip_tri(const Tri& t, int k) {
    FlipPlan f = plan_flip(t, k);
    auto tr = t.triangles();
    tr[f.t1] = f.n1;
    tr[f.t2] = f.n2;
    return Tri(t.arc_count(), tr);
}

std::vector<ThetaVec> theta_from_punctures(const Tri& t) {
    std::vector<ThetaVec> out(t.puncture_count());
    for (int p = 0; p < t.puncture_count(); ++p) {
        out[p].coefficients.assign(t.arc_count(), 0);
        out[p].tag = "puncture " + std::to_string(p);
    }
    for (int a = 0; a < t.arc_count(); ++a)
        for (int end : t.arc_ends()[a]) ++out[end].coefficients[a];
    return out;
}

Tri punctured_torus() { return Tri(3, {{0, 1, 2}, {0, 1, 2}}); }

Tri four_punctured_sphere() { return Tri(6, {{0, 3, 1}, {1, 5, 2}, {2, 4, 0}, {4, 5, 3}}); }

Tri ideal_square() { return Tri(5, {{0, 1, 4}, {4, 2, 3}}); }

nlohmann::json to_json(const Tri& t) {
    nlohmann::json tris = nlohmann::json::array();
    for (const auto& tr : t.triangles()) tris.push_back({tr[0], tr[1], tr[2]});
    nlohmann::json val = nlohmann::json::array();
    for (const auto& th : theta_from_punctures(t)) val.push_back(th.coefficients);
    return {{"arcs", t.arc_count()},
            {"triangles", tris},
            {"punctures", {{"count", t.puncture_count()}, {"valence", val}}}};
}

Tri tri_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("arcs") || !j.contains("triangles"))
        throw UsageError("triangulation: missing field 'arcs' or 'triangles'");
    int arcs;
    const auto& aj = j.at("arcs");
    if (aj.is_number_integer())
        arcs = aj.get<int>();
    else if (aj.is_array())
        arcs = static_cast<int>(aj.size());
    else
        throw UsageError("triangulation: field 'arcs' must be a count or a list");
    std::vector<std::array<int, 3>> tris;
    for (const auto& tr : j.at("triangles")) {
        if (!tr.is_array() || tr.size() != 3) throw UsageError("triangulation: field 'triangles' needs triples");
        tris.push_back({tr[0].get<int>(), tr[1].get<int>(), tr[2].get<int>()});
    }
    Tri t(arcs, tris);
    if (j.contains("punctures") && j.at("punctures").contains("count") &&
        j.at("punctures").at("count").get<int>() != t.puncture_count())
        throw UsageError("triangulation: field 'punctures' disagrees with the corner gluing");
    return t;
}

const std::vector<std::string>& relation_names() {
    static const std::vector<std::string> names{"involution", "quadrilateral", "pentagon", "permutation", "relabel"};
    return names;
}

std::vector<Move> relation_word(const std::string& name, const ExMat& e) {
    const int n = e.rank();
    std::string key = name;
    const auto& names = relation_names();
    if (key.size() == 2 && (key[0] == 'R' || key[0] == 'r') && key[1] >= '1' && key[1] <= '5') key = names[key[1] - '1'];
    if (std::find(names.begin(), names.end(), key) == names.end())
        throw UsageError("unknown relation '" + name + "'");
    if (n < 1 || (key != "involution" && n < 2)) throw UsageError("relation " + key + " needs a larger seed");
    auto find_pair = [&](auto pred) {
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (pred(e(i, j))) return std::pair{i, j};
        throw UsageError("relation " + key + ": no index pair of the required type in " + to_string(e));
    };
    if (key == "involution") return {Mutation{0}, Mutation{0}};
    if (key == "quadrilateral") {
        auto [i, j] = find_pair([](int v) { return v == 0; });
        return {Mutation{i}, Mutation{j}, Mutation{i}, Mutation{j}};
    }
    if (key == "pentagon") {
        auto [i, j] = find_pair([](int v) { return v == 1 || v == -1; });
        return {Mutation{i}, Mutation{j}, Mutation{i}, Mutation{j}, Mutation{i}, Relabel{perm_transposition(n, i, j)}};
    }
    Permutation cyc(n);
    for (int i = 0; i < n; ++i) cyc[i] = (i + 1) % n;
    if (key == "permutation") {
        Permutation t = perm_transposition(n, 0, 1);
        return {Relabel{t}, Relabel{cyc}, Relabel{perm_inverse(perm_compose(cyc, t))}};
    }
    return {Relabel{perm_inverse(cyc)}, Mutation{0}, Relabel{cyc}, Mutation{cyc[0]}};
}

} // namespace rlam
