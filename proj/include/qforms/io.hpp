#pragma once

#include "qforms/models.hpp"
#include "qforms/simplicial.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace qforms {

// A parsed batch job: one payload plus run parameters.  See the README for
// the JSON schemas.
struct JobSpec {
    std::string kind;   // check | betti | basic | mqk | double | ginzburg | vanest | cartan-suite
    std::string model = "ce"; // ce | weil | brst | cartan (betti/basic flavors)
    std::optional<std::pair<int, int>> window;
    std::optional<long> weight;
    std::string format = "table"; // table | json
    bool want_representatives = false;
    std::uint64_t seed = 1;
    int samples = 25;

    std::optional<StructureData> lie_algebra;
    std::optional<StructureData> algebroid;
    std::optional<TablePtr> action_base;
    std::vector<Derivation> action; // over *action_base
    std::vector<Section> premoment; // over algebroid->base_table
    std::optional<std::vector<std::vector<std::vector<Rat>>>> bialgebra_c;
    std::optional<std::vector<std::vector<std::vector<Rat>>>> bialgebra_gamma;
    std::optional<FiniteGroupoid> finite_groupoid;
    std::optional<PolyActionGroupoid> poly_groupoid;
    std::optional<std::vector<GeneratorTable::Generator>> suite_generators;
};

// Reads and validates a job file.  Eagerly checks all structure-data
// invariants (Jacobi, action axioms, groupoid axioms): ParseError for
// malformed files, ValidationError for invariant violations.
JobSpec parse_job(const std::string& path);

struct Report {
    bool pass = true;
    int exit_code = 0;
    std::string text; // deterministic rendering (table or json)
};

Report run_job(const JobSpec& job);

// Exit-code category for an engine exception.
int exit_code_for(const std::exception& e);

} // namespace qforms
