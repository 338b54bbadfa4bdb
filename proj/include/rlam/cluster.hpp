#pragma once

// Exchange matrices, seeds, mutation and permutation moves, ideal
// triangulations and puncture constraint vectors.

#include "rlam/errors.hpp"

#include <json.hpp>

#include <array>
#include <random>
#include <string>
#include <variant>
#include <vector>

namespace rlam {

// Skew-symmetric integer matrix, row-major.
class ExMat {
public:
    ExMat() = default;
    explicit ExMat(int n);
    ExMat(std::initializer_list<std::initializer_list<int>> rows);
    static ExMat from_rows(const std::vector<std::vector<int>>& rows);

    int rank() const { return n_; }
    int operator()(int i, int j) const { return e_[idx(i, j)]; }
    // Sets ε_ij and ε_ji = -v together.
    void set(int i, int j, int v);
    std::vector<std::vector<int>> rows() const;
    bool is_zero() const;

    friend bool operator==(const ExMat&, const ExMat&) = default;

private:
    std::size_t idx(int i, int j) const;
    int n_ = 0;
    std::vector<int> e_;
};

std::string to_string(const ExMat& e);

// sigma[i] is the image of index i.
using Permutation = std::vector<int>;

Permutation perm_identity(int n);
Permutation perm_compose(const Permutation& outer, const Permutation& inner); // outer ∘ inner
Permutation perm_inverse(const Permutation& s);
Permutation perm_transposition(int n, int i, int j);
void check_permutation(const Permutation& s, int n);

ExMat mutate_exmat(const ExMat& e, int k);
// Entries above the diagonal uniform in [-bound, bound].
ExMat random_exmat(int n, int bound, std::mt19937_64& rng);
// ε'_{σ(i)σ(j)} = ε_ij
ExMat permute_exmat(const ExMat& e, const Permutation& sigma);

struct Mutation {
    int k;
    friend bool operator==(const Mutation&, const Mutation&) = default;
};
struct Relabel {
    Permutation sigma;
    friend bool operator==(const Relabel&, const Relabel&) = default;
};
using Move = std::variant<Mutation, Relabel>;

// "m1,m3,p(1 2)": mutations and cycle-notation permutations, 1-based, applied
// left to right.
std::vector<Move> parse_moves(const std::string& text, int rank);
std::string format_moves(const std::vector<Move>& moves);
ExMat apply_move(const ExMat& e, const Move& m);

// Minimal instance of a relation on e, as a move word whose composite is the
// identity. Names: involution, quadrilateral, pentagon, permutation,
// relabel (or R1..R5).
std::vector<Move> relation_word(const std::string& name, const ExMat& e);
const std::vector<std::string>& relation_names();

struct Seed {
    ExMat exmat;
    std::vector<std::string> labels;
    std::vector<Move> history;
    ExMat initial;

    Seed() = default;
    explicit Seed(ExMat e, std::vector<std::string> labels = {});
    int rank() const { return exmat.rank(); }
    Seed apply(const Move& m) const;
    Seed apply(const std::vector<Move>& ms) const;
    // Replays history from the initial matrix and compares.
    bool history_consistent() const;
};

nlohmann::json to_json(const Seed& s);
Seed seed_from_json(const nlohmann::json& j);

struct ThetaVec {
    std::vector<long> coefficients;
    std::string tag;
};

// Integer basis of ker ε in Hermite normal form.
std::vector<ThetaVec> kernel_vectors(const ExMat& e);
bool in_kernel(const ExMat& e, const std::vector<long>& theta);

// Ideal triangulation encoded by oriented triples of arc indices, sides listed
// counterclockwise. An arc appearing in two triangle sides is interior; an arc
// appearing once is a boundary segment.
class Tri {
public:
    Tri() = default;
    Tri(int arcs, std::vector<std::array<int, 3>> triangles);

    int arc_count() const { return arcs_; }
    const std::vector<std::array<int, 3>>& triangles() const { return tris_; }
    int puncture_count() const { return punctures_; }
    bool closed() const;
    bool is_boundary(int arc) const;
    // Genus of a closed surface from #arcs = 6g - 6 + 3n.
    int genus() const;
    // Vertex class (puncture id) of both ends of each arc.
    const std::vector<std::array<int, 2>>& arc_ends() const { return ends_; }
    // Triangles rotated to start at their least side and sorted.
    Tri canonical() const;

    friend bool operator==(const Tri& a, const Tri& b) {
        return a.arcs_ == b.arcs_ && a.tris_ == b.tris_;
    }

private:
    void build();
    int arcs_ = 0;
    std::vector<std::array<int, 3>> tris_;
    int punctures_ = 0;
    std::vector<std::array<int, 2>> ends_;
    std::vector<int> occurrences_;
};

ExMat exmat_from_tri(const Tri& t);
bool flippable(const Tri& t, int k);
Tri flip_tri(const Tri& t, int k);
std::vector<ThetaVec> theta_from_punctures(const Tri& t);

Tri punctured_torus();
// Tetrahedral triangulation: 4 triangles, 6 arcs.
Tri four_punctured_sphere();
// Disk with four marked points: arcs 0..3 on the boundary, diagonal 4.
Tri ideal_square();

nlohmann::json to_json(const Tri& t);
Tri tri_from_json(const nlohmann::json& j);

} // namespace rlam
