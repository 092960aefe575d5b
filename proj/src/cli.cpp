#include "moment_lst/cli.hpp"

#include <sstream>

#include "moment_lst/errors.hpp"

namespace mlst::cli {

namespace {

std::string_view verdict_name(Verdict v) {
    switch (v) {
        case Verdict::Holds: return "holds";
        case Verdict::Fails: return "fails";
        case Verdict::Unknown: return "unknown";
    }
    return "unknown";
}

json poly_json(const LaurentPolynomial& p) { return p.to_string(); }

json unit_json(const std::optional<UnitElement>& u) {
    if (!u) return nullptr;
    return json{{"alpha", scalar_json(u->alpha)}, {"k", u->k}};
}

json moments_json(const HermitianFunctional& f, int n) {
    json out = json::array();
    for (int k = 0; k <= f.clamp_order(n); ++k) out.push_back(scalar_json(f.moment(k)));
    return out;
}

json series_json(const PowerSeries& s) {
    json out = json::array();
    for (const auto& c : s.coeffs()) out.push_back(scalar_json(c));
    return out;
}

PowerSeries series_from_json(const json& j) {
    std::vector<Scalar> c;
    for (const auto& x : j) c.push_back(scalar_from_json(x));
    if (c.empty()) throw Error(ErrorCode::InvalidArgument, "empty coefficient list in step");
    return PowerSeries(std::move(c));
}

StepKind kind_from_name(const std::string& s) {
    if (s == "c000") return StepKind::C000;
    if (s == "c10") return StepKind::C10;
    if (s == "c01") return StepKind::C01;
    throw Error(ErrorCode::InvalidArgument, "unknown step kind '" + s + "'");
}

/// ParseError tagged with the operand it came from.
struct OperandParseError : ParseError {
    OperandParseError(std::string op, const ParseError& e)
        : ParseError(e.line(), e.column(), e.expected()), operand(std::move(op)) {}
    std::string operand;
};

/// Parsed operands sharing one backend.
class Operands {
   public:
    explicit Operands(const Command& c) : c_(c) {
        opts_.tol = Tolerance{c.epsilon};
        bool decimal = false;
        for (const auto& [name, text] : {std::pair{"u", &c.u}, {"v", &c.v}, {"f", &c.f}, {"l", &c.l},
                                         {"m", &c.m}, {"lst", &c.lst}}) {
            if (*text) decimal = decimal || dsl::has_decimal(parse(name, **text));
        }
        if (decimal && c.backend == dsl::Backend::Exact) {
            throw Error(ErrorCode::MixedBackend, "decimal literal in an exact-backend command");
        }
        opts_.backend = (decimal || c.backend == dsl::Backend::Approx) ? dsl::Backend::Approx : dsl::Backend::Exact;
    }

    bool approx() const { return opts_.backend == dsl::Backend::Approx; }
    const Tolerance& tol() const { return opts_.tol; }

    HermitianFunctional functional(const char* name, const std::optional<std::string>& text) const {
        return as<HermitianFunctional>(name, text, "functional");
    }
    LaurentPolynomial polynomial(const char* name, const std::optional<std::string>& text) const {
        const dsl::Value v = value(name, text);
        if (auto s = std::get_if<Scalar>(&v)) return LaurentPolynomial(*s);
        return as<LaurentPolynomial>(name, text, "polynomial");
    }
    LstTriple triple() const { return as<LstTriple>("lst", c_.lst, "triple"); }

    HermitianFunctional u() const { return functional("u", c_.u); }
    HermitianFunctional v() const { return functional("v", c_.v); }

   private:
    static dsl::Expr parse(const char* name, const std::string& text) {
        try {
            return dsl::parse(text);
        } catch (ParseError& e) {
            throw OperandParseError(name, e);
        }
    }

    dsl::Value value(const char* name, const std::optional<std::string>& text) const {
        if (!text) throw Error(ErrorCode::InvalidArgument, std::string("missing operand --") + name);
        return dsl::evaluate(parse(name, *text), opts_);
    }

    template <class T>
    T as(const char* name, const std::optional<std::string>& text, std::string_view what) const {
        const dsl::Value v = value(name, text);
        if (auto x = std::get_if<T>(&v)) return *x;
        throw Error(ErrorCode::InvalidArgument, std::string("--") + name + " must be a " + std::string(what) +
                                                    ", got a " + std::string(dsl::value_type_name(v)));
    }

    const Command& c_;
    dsl::EvalOptions opts_;
};

std::pair<LaurentPolynomial, LaurentPolynomial> rm_pair(const Command& c, const Operands& ops) {
    if (c.l || c.m) return {ops.polynomial("l", c.l), ops.polynomial("m", c.m)};
    const LstTriple t = ops.triple();
    return {t.l, t.m};
}

json relation_json(const RelationReport& r) {
    json rows = json::array();
    for (const auto& row : r.rows) {
        rows.push_back({{"exponent", row.exponent},
                        {"general", row.general},
                        {"split_side", row.split_side},
                        {"split", row.split}});
    }
    return {{"all_hold", r.all_hold}, {"rows", rows}};
}

json classification_json(const Classification& k) {
    json out{{"classification", class_tag_name(k.tag)},
             {"minimal", triple_json(k.minimal)},
             {"unit", unit_json(k.unit)},
             {"witness", k.witness ? triple_json(*k.witness) : json(nullptr)},
             {"reason", k.reason}};
    out["rm"] = k.rm ? json{{"l", poly_json(k.rm->first)}, {"m", poly_json(k.rm->second)}} : json(nullptr);
    return out;
}

int holds_code(const Verification& v) { return v.holds() ? 0 : 1; }

Outcome dispatch(const Command& c) {
    const Operands ops(c);
    const Tolerance& tol = ops.tol();
    const int n = c.n;
    Outcome out;
    json& r = out.report;
    r["verb"] = c.verb;
    r["backend"] = ops.approx() ? "approx" : "exact";

    if (c.verb == "verify-rm") {
        const auto [l, m] = rm_pair(c, ops);
        const Verification v = verify_rm(ops.u(), ops.v(), l, m, n, tol);
        r["l"] = poly_json(l);
        r["m"] = poly_json(m);
        r["verification"] = verification_json(v);
        out.exit_code = holds_code(v);
    } else if (c.verb == "verify-lst") {
        const Verification v = verify_lst(ops.u(), ops.v(), ops.triple(), n, tol);
        r["verification"] = verification_json(v);
        out.exit_code = holds_code(v);
    } else if (c.verb == "reduce") {
        const LstTriple t = ops.triple();
        const LstTriple minimal = minimize_lst(t, tol);
        const auto u = ops.u(), v = ops.v();
        r["input"] = triple_json(t);
        r["minimal"] = triple_json(minimal);
        r["gcd"] = poly_json(exact_divide(t.l, minimal.l, tol));
        const Verification check = verify_lst(u, v, minimal, n, tol);
        r["verification"] = verification_json(check);
        const Classification k = classify(u, v, t, n, tol);
        r["classification"] = class_tag_name(k.tag);
        r["unit"] = unit_json(k.unit);
        out.exit_code = holds_code(check);
    } else if (c.verb == "classify") {
        const Classification k = classify(ops.u(), ops.v(), ops.triple(), n, tol);
        r.update(classification_json(k));
        if (c.expect && *c.expect != class_tag_name(k.tag)) {
            r["expected"] = *c.expect;
            out.exit_code = 1;
        }
    } else if (c.verb == "decompose" || c.verb == "generators") {
        const LstTriple t = ops.triple();
        const auto u = ops.u(), v = ops.v();
        const PolyLst p = normalize(t);
        const auto steps = decompose(t, u, v, n, tol);
        r["class"] = p.lst_class().to_string();
        r["normalized"] = {{"a", poly_json(p.a)}, {"b", poly_json(p.b)}, {"c", poly_json(p.c)}};
        json arr = json::array();
        for (const auto& s : steps) {
            json js = step_json(s);
            if (c.verb == "generators") {
                js["relation"] = relation_json(elementary_relation(s, *s.input, *s.output, std::min(n, 16), tol));
            }
            arr.push_back(std::move(js));
        }
        r["steps"] = std::move(arr);
        const Recomposition rc = recompose(steps, n, tol);
        r["recomposition"] = {{"triple", triple_json(rc.triple)},
                              {"unit", unit_json(unit_equivalent(t, rc.triple, tol))},
                              {"verification", verification_json(rc.verification)}};
        out.exit_code = holds_code(rc.verification);
    } else if (c.verb == "recompose") {
        if (!c.steps) throw Error(ErrorCode::InvalidArgument, "missing operand --steps");
        json arr = json::parse(*c.steps);
        if (arr.is_object() && arr.contains("steps")) arr = arr["steps"];
        std::vector<ElementaryStep> steps;
        for (const auto& js : arr) steps.push_back(step_from_json(js));
        const Recomposition rc = recompose(steps, n, tol);
        r["triple"] = triple_json(rc.triple);
        r["verification"] = verification_json(rc.verification);
        out.exit_code = holds_code(rc.verification);
    } else if (c.verb == "apply") {
        const HermitianFunctional f = apply_lst(ops.v(), ops.triple(), tol);
        r["functional"] = f.label();
        if (const RationalCS* q = f.rational()) {
            r["rational"] = {{"p", poly_json(q->numerator())}, {"q", poly_json(q->denominator())}};
        }
        r["moments"] = moments_json(f, n);
    } else if (c.verb == "moments") {
        const HermitianFunctional f = c.f ? ops.functional("f", c.f) : ops.u();
        r["functional"] = f.label();
        r["moments"] = moments_json(f, n);
    } else if (c.verb == "delta-cert") {
        const auto cert = delta_certificate(ops.u(), tol);
        r["in_delta"] = cert.has_value();
        if (cert) {
            r["q"] = poly_json(cert->q);
            r["p"] = poly_json(cert->p);
        }
        out.exit_code = cert ? 0 : 1;
    } else if (c.verb == "rat-rm") {
        const auto [q, m] = rat_to_leb_rm(ops.u(), tol);
        r["l"] = poly_json(q);
        r["m"] = poly_json(m);
    } else if (c.verb == "witness") {
        const auto u = ops.u(), v = ops.v();
        const LstTriple base = c.lst ? minimize_lst(ops.triple(), tol) : find_lst(u, v, tol);
        const LstTriple w = rat_nonuniqueness_witness(u, v, base, tol);
        r["base"] = triple_json(base);
        r["witness"] = triple_json(w);
        r["unit_equivalent"] = unit_equivalent(w, base, tol).has_value();
        const Verification check = verify_lst(u, v, w, n, tol);
        r["verification"] = verification_json(check);
        out.exit_code = holds_code(check);
    } else if (c.verb == "general") {
        const GeneralDecomposition g = decompose_general(ops.u(), ops.v(), ops.triple(), n, tol);
        r["symmetrized"] = triple_json(g.symmetrized);
        r["p"] = g.p;
        r["m_plus"] = poly_json(g.m_plus);
        r["m_minus"] = poly_json(g.m_minus);
        r["c_plus"] = poly_json(g.c_plus);
        r["c_minus"] = poly_json(g.c_minus);
        r["identity"] = verification_json(g.identity);
        r["hat_identity"] = verification_json(g.hat_identity);
    } else if (c.verb == "find-lst") {
        r["minimal"] = triple_json(find_lst(ops.u(), ops.v(), tol));
    } else if (c.verb == "find-rm") {
        const auto [l, m] = find_rm(ops.u(), ops.v(), tol);
        r["l"] = poly_json(l);
        r["m"] = poly_json(m);
    } else {
        throw Error(ErrorCode::InvalidArgument, "unknown verb '" + c.verb + "'");
    }
    return out;
}

void render(const json& j, int indent, std::ostringstream& os) {
    const std::string pad(static_cast<std::size_t>(indent), ' ');
    for (const auto& [key, value] : j.items()) {
        os << pad << key << ":";
        if (value.is_object() && !value.empty()) {
            os << "\n";
            render(value, indent + 2, os);
        } else if (value.is_array() && !value.empty() && value.front().is_object()) {
            os << "\n";
            for (const auto& item : value) {
                os << pad << "  -\n";
                render(item, indent + 4, os);
            }
        } else if (value.is_array()) {
            os << " [";
            for (std::size_t k = 0; k < value.size(); ++k) {
                os << (k ? ", " : "") << (value[k].is_string() ? value[k].get<std::string>() : value[k].dump());
            }
            os << "]\n";
        } else {
            os << " " << (value.is_string() ? value.get<std::string>() : value.dump()) << "\n";
        }
    }
}

}  // namespace

const std::vector<std::string>& verbs() {
    static const std::vector<std::string> v{"verify-rm", "verify-lst", "reduce",     "classify", "decompose",
                                            "generators", "recompose", "apply",      "moments",  "delta-cert",
                                            "rat-rm",     "witness",   "general",    "find-lst", "find-rm"};
    return v;
}

Outcome run(const Command& c) {
    auto failure = [&](json error, ErrorCode code) {
        Outcome o;
        o.exit_code = code == ErrorCode::VerificationFailed ? 1 : 2;
        o.report = {{"verb", c.verb}, {"error", std::move(error)}};
        return o;
    };
    try {
        if (c.n < 1) throw Error(ErrorCode::InvalidArgument, "--n must be >= 1");
        return dispatch(c);
    } catch (const ParseError& e) {
        json err{{"code", error_code_name(e.code())},
                 {"message", e.what()},
                 {"line", e.line()},
                 {"column", e.column()},
                 {"expected", e.expected()}};
        if (auto* op = dynamic_cast<const OperandParseError*>(&e)) {
            err["operand"] = op->operand;
        }
        return failure(std::move(err), e.code());
    } catch (const Error& e) {
        return failure({{"code", error_code_name(e.code())}, {"message", e.what()}}, e.code());
    } catch (const json::exception& e) {
        return failure({{"code", error_code_name(ErrorCode::InvalidArgument)}, {"message", e.what()}},
                       ErrorCode::InvalidArgument);
    }
}

std::string render_text(const json& report) {
    std::ostringstream os;
    render(report, 0, os);
    return os.str();
}

json scalar_json(const Scalar& s) {
    if (s.is_exact()) return s.to_string();
    const auto z = s.to_complex();
    if (z.imag() == 0.0) return z.real();
    return json{{"re", z.real()}, {"im", z.imag()}};
}

Scalar scalar_from_json(const json& j) {
    if (j.is_string()) return dsl::parse_scalar(j.get<std::string>());
    if (j.is_number()) return Scalar::approx(j.get<double>());
    if (j.is_object()) return Scalar::approx(j.at("re").get<double>(), j.at("im").get<double>());
    throw Error(ErrorCode::InvalidArgument, "scalar must be a string, number or {re, im}");
}

json triple_json(const LstTriple& t) {
    json out{{"l", poly_json(t.l)}, {"m", poly_json(t.m)}, {"c", poly_json(t.c)}, {"text", dsl::triple_text(t)}};
    out["symmetry"] = t.symmetry ? json{{"p", t.symmetry->p}, {"alpha", scalar_json(t.symmetry->alpha)}} : json(nullptr);
    return out;
}

json verification_json(const Verification& v) {
    return {{"verdict", verdict_name(v.verdict)},
            {"holds", v.holds()},
            {"exact", v.exact},
            {"order", v.order},
            {"max_residual", v.max_residual},
            {"first_failure", v.first_failure ? json(*v.first_failure) : json(nullptr)}};
}

json step_json(const ElementaryStep& s) {
    return {{"kind", step_kind_name(s.kind)},
            {"a", poly_json(s.a)},
            {"b", poly_json(s.b)},
            {"c", scalar_json(s.c)},
            {"input_mu0", scalar_json(s.input_mu0)},
            {"intermediate_mu0", scalar_json(s.output_mu0)},
            {"input_cs", series_json(s.input_cs)},
            {"output_cs", series_json(s.output_cs)}};
}

ElementaryStep step_from_json(const json& j) {
    ElementaryStep s;
    s.kind = kind_from_name(j.at("kind").get<std::string>());
    s.a = dsl::parse_polynomial(j.at("a").get<std::string>());
    s.b = dsl::parse_polynomial(j.at("b").get<std::string>());
    s.c = scalar_from_json(j.at("c"));
    s.input_cs = series_from_json(j.at("input_cs"));
    s.output_cs = series_from_json(j.at("output_cs"));
    s.input_mu0 = s.input_cs[0];
    s.output_mu0 = s.output_cs[0];
    if (s.implied_kind() != s.kind) {
        throw Error(ErrorCode::ConstraintViolation, "step coefficients do not match kind " + j.at("kind").dump());
    }
    return s;
}

}  // namespace mlst::cli
