#include <doctest.h>

#include <random>

#include "fathom/maxsat.hpp"

using namespace fathom::sat;

namespace {

// exhaustive optimum over all assignments; -1 when the hards are unsat
std::int64_t brute_force_optimum(const PartialMaxSatInstance& inst) {
    std::int64_t best = -1;
    for (long long m = 0; m < (1LL << inst.hard.num_vars); ++m) {
        std::vector<bool> model(inst.hard.num_vars);
        for (int v = 0; v < inst.hard.num_vars; ++v) model[v] = (m >> v) & 1;
        bool ok = true;
        for (const auto& c : inst.hard.clauses)
            if (!clause_satisfied(c, model)) {
                ok = false;
                break;
            }
        if (!ok) continue;
        std::int64_t cost = model_cost(inst, model);
        if (best < 0 || cost < best) best = cost;
    }
    return best;
}

}  // namespace

TEST_CASE("forced soft falsification costs its weight") {
    PartialMaxSatInstance inst;
    inst.hard.num_vars = 2;
    inst.hard.clauses = {{1, 2}, {-1}};
    inst.soft = {{{-2}, 1}};
    OptResult r = solve_partial_maxsat(inst);
    REQUIRE(r.optimal());
    CHECK(r.cost == 1);
    CHECK(r.model[1] == true);  // var 2 forced true
}

TEST_CASE("complementary soft units cost one") {
    PartialMaxSatInstance inst;
    inst.hard.num_vars = 1;
    inst.soft = {{{1}, 1}, {{-1}, 1}};
    OptResult r = solve_partial_maxsat(inst);
    REQUIRE(r.optimal());
    CHECK(r.cost == 1);
}

TEST_CASE("unsatisfiable hard clauses are reported, not absorbed") {
    PartialMaxSatInstance inst;
    inst.hard.num_vars = 1;
    inst.hard.clauses = {{1}, {-1}};
    OptResult r = solve_partial_maxsat(inst);
    CHECK(r.status == OptResult::Status::HardUnsat);
}

TEST_CASE("optimal cost matches brute force on random instances") {
    std::mt19937_64 rng(424242);
    for (int iter = 0; iter < 300; ++iter) {
        PartialMaxSatInstance inst;
        inst.hard.num_vars = 2 + static_cast<int>(rng() % 12);
        int nh = static_cast<int>(rng() % 14);
        for (int i = 0; i < nh; ++i) {
            Clause c;
            int len = 1 + static_cast<int>(rng() % 3);
            for (int j = 0; j < len; ++j) {
                int v = 1 + static_cast<int>(rng() % inst.hard.num_vars);
                c.push_back(rng() % 2 ? v : -v);
            }
            inst.hard.clauses.push_back(std::move(c));
        }
        int ns = static_cast<int>(rng() % 17);
        for (int i = 0; i < ns; ++i) {
            Clause c;
            int len = 1 + static_cast<int>(rng() % 3);
            for (int j = 0; j < len; ++j) {
                int v = 1 + static_cast<int>(rng() % inst.hard.num_vars);
                c.push_back(rng() % 2 ? v : -v);
            }
            inst.soft.push_back({std::move(c), 1 + static_cast<std::int64_t>(rng() % 8)});
        }
        std::int64_t expected = brute_force_optimum(inst);
        OptResult r = solve_partial_maxsat(inst);
        CAPTURE(iter);
        if (expected < 0) {
            REQUIRE(r.status == OptResult::Status::HardUnsat);
        } else {
            REQUIRE(r.optimal());
            REQUIRE(r.cost == expected);
            // the model's actual cost equals the reported cost exactly
            CHECK(model_cost(inst, r.model) == r.cost);
            for (const auto& c : inst.hard.clauses) CHECK(clause_satisfied(c, r.model));
        }
    }
}

TEST_CASE("all-soft-satisfiable instances cost zero") {
    PartialMaxSatInstance inst;
    inst.hard.num_vars = 3;
    inst.hard.clauses = {{1, 2, 3}};
    inst.soft = {{{1}, 5}, {{2}, 3}};
    OptResult r = solve_partial_maxsat(inst);
    REQUIRE(r.optimal());
    CHECK(r.cost == 0);
}

TEST_CASE("weights below one are rejected") {
    PartialMaxSatInstance inst;
    inst.hard.num_vars = 1;
    inst.soft = {{{1}, 0}};
    CHECK_THROWS_AS(solve_partial_maxsat(inst), std::invalid_argument);
}
