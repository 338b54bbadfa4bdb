#include "rlam/classical.hpp"

#include <doctest.h>

using namespace rlam;

// Every composite pullback of a generator along mutation paths of length at
// most 5 from the rank-2 seed with ε_12 = 1, checked for a monomial denominator.
TEST_CASE("composite pullbacks along short paths are Laurent") {
    Seed s(ExMat{{0, 1}, {-1, 0}});
    std::vector<std::vector<int>> paths{{}};
    for (int len = 1; len <= 5; ++len) {
        std::vector<std::vector<int>> next;
        for (const auto& p : paths)
            if (static_cast<int>(p.size()) == len - 1)
                for (int k : {0, 1}) {
                    auto q = p;
                    q.push_back(k);
                    next.push_back(q);
                }
        paths.insert(paths.end(), next.begin(), next.end());
    }
    for (const auto& p : paths) {
        std::vector<Move> ms;
        for (int k : p) ms.push_back(Mutation{k});
        PullbackMap f = pullback_along(s, ms);
        for (int i = 0; i < 2; ++i) {
            INFO("path " << format_moves(ms) << ", generator " << i + 1 << ": " << f.images[i].str());
            CHECK(f.images[i].is_laurent());
        }
    }
}
