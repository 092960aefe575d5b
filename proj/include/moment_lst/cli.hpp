#pragma once

#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <vector>

#include "moment_lst/dsl.hpp"
#include "moment_lst/generators.hpp"

namespace mlst::cli {

using nlohmann::json;

/// One invocation of `moment-lst <verb>`. Operands are DSL text.
struct Command {
    std::string verb;
    std::optional<std::string> u, v, f, l, m, lst;
    /// JSON array of steps, as emitted by `decompose`.
    std::optional<std::string> steps;
    /// Expected classification tag for `classify`; a mismatch exits 1.
    std::optional<std::string> expect;
    int n = kDefaultOrder;
    double epsilon = Tolerance{}.eps;
    dsl::Backend backend = dsl::Backend::Auto;
};

struct Outcome {
    /// 0 holds or success, 1 fails, 2 error.
    int exit_code = 0;
    json report;
};

const std::vector<std::string>& verbs();

/// Never throws for library errors; they become exit code 2 with an
/// "error" object carrying the machine-readable code.
Outcome run(const Command& c);

/// Indented key: value rendering of a report.
std::string render_text(const json& report);

json scalar_json(const Scalar& s);
Scalar scalar_from_json(const json& j);
json triple_json(const LstTriple& t);
json verification_json(const Verification& v);
json step_json(const ElementaryStep& s);
ElementaryStep step_from_json(const json& j);

}  // namespace mlst::cli
