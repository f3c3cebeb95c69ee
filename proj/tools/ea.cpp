// Command-line front end: load/generate/serialize finite effect algebras,
// run structural analyses, and emit deterministic human-readable or JSON
// reports.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ea/blocks.hpp"
#include "ea/compat.hpp"
#include "ea/constructors.hpp"
#include "ea/corpus.hpp"
#include "ea/io.hpp"
#include "ea/observables.hpp"
#include "ea/oracle.hpp"
#include "ea/properties.hpp"
#include "ea/report.hpp"
#include "ea/states.hpp"

namespace {

using ea::io::Json;

constexpr std::uint64_t kDefaultSeed = 0xEA5EED;

struct CommonOpts {
    std::uint64_t seed = kDefaultSeed;
    std::uint64_t samples = 100'000;
    std::uint64_t max_tuples = 100'000'000;
    bool exhaustive = false;
    std::uint32_t max_carrier = ea::kDefaultCarrierCap;
    bool json = false;

    ea::ScanBudget scan() const {
        ea::ScanBudget b;
        b.max_tuples = max_tuples;
        b.samples = samples;
        b.seed = seed;
        b.force_exhaustive = exhaustive;
        return b;
    }
    ea::ValidationOptions vopts() const {
        ea::ValidationOptions v;
        v.size_cap = max_carrier;
        v.max_assoc_tuples = max_tuples;
        v.seed = seed;
        return v;
    }
};

void add_common(CLI::App* cmd, CommonOpts& c) {
    cmd->add_option("--seed", c.seed, "seed for sampled scans (printed in reports)");
    cmd->add_option("--samples", c.samples, "sample count for sampled scans");
    cmd->add_option("--budget", c.max_tuples, "max tuple count for exhaustive scans");
    cmd->add_flag("--exhaustive", c.exhaustive, "force exhaustive scans regardless of budget");
    cmd->add_option("--max-carrier", c.max_carrier, "override the carrier size cap");
    cmd->add_flag("--json", c.json, "emit JSON instead of text");
}

void apply_env_budget(CommonOpts& c) {
    if (const char* env = std::getenv("EA_BUDGET")) {
        try {
            c.max_tuples = std::stoull(env);
        } catch (...) {
            throw ea::StructuralError("EA_BUDGET is not a number");
        }
    }
}

ea::EffectAlgebra load_or_die(const std::filesystem::path& path, const CommonOpts& c) {
    auto tl = ea::io::load_algebra_file(path, c.vopts());
    if (!tl.report.ok) {
        std::ostringstream msg;
        msg << "algebra in " << path.string() << " fails validation:";
        for (auto& v : tl.report.violations) msg << " [" << v.axiom << "] " << v.message;
        throw ea::StructuralError(msg.str());
    }
    return std::move(*tl.algebra);
}

/// Splits a comma-separated list of element labels, allowing labels that
/// themselves contain commas (greedy longest-match against the carrier).
std::vector<ea::Elem> resolve_label_list(const ea::EffectAlgebra& E, const std::string& s) {
    std::vector<ea::Elem> out;
    std::size_t pos = 0;
    while (pos < s.size()) {
        std::size_t best_len = 0;
        ea::Elem best = ea::kNone;
        for (ea::Elem e = 0; e < E.size(); ++e) {
            const std::string& lab = E.label(e);
            if (lab.size() > best_len && s.compare(pos, lab.size(), lab) == 0) {
                std::size_t end = pos + lab.size();
                if (end == s.size() || s[end] == ',') {
                    best_len = lab.size();
                    best = e;
                }
            }
        }
        if (best == ea::kNone)
            throw ea::StructuralError("cannot resolve element list at '" + s.substr(pos) + "'");
        out.push_back(best);
        pos += best_len;
        if (pos < s.size()) {
            if (s[pos] != ',')
                throw ea::StructuralError("expected ',' in element list at '" + s.substr(pos) + "'");
            ++pos;
        }
    }
    return out;
}

/// Resolves "x=(20,30)" style grid-numerator witnesses or plain labels.
ea::Elem resolve_witness_token(const ea::EffectAlgebra& E, std::string tok) {
    auto eq = tok.find('=');
    if (eq != std::string::npos) tok = tok.substr(eq + 1);
    if (auto e = E.find(tok)) return *e;
    if (tok.size() >= 2 && tok.front() == '(' && tok.back() == ')') {
        // numerator tuple: infer the grid denominator from any interior label
        std::string den;
        for (ea::Elem e = 0; e < E.size(); ++e) {
            const std::string& lab = E.label(e);
            auto slash = lab.find('/');
            if (lab.size() > 2 && lab.front() == '(' && slash != std::string::npos) {
                auto end = lab.find_first_of(",)", slash);
                den = lab.substr(slash + 1, end - slash - 1);
                break;
            }
        }
        if (!den.empty()) {
            std::string rebuilt = "(";
            std::string inner = tok.substr(1, tok.size() - 2);
            auto parts = ea::split_on(inner, ',');
            for (std::size_t i = 0; i < parts.size(); ++i) {
                if (i) rebuilt += ',';
                rebuilt += parts[i] + "/" + den;
            }
            rebuilt += ')';
            if (auto e = E.find(rebuilt)) return *e;
        }
    }
    throw ea::StructuralError("no element matches '" + tok + "'");
}

void emit(const Json& j) { std::cout << j.dump(2) << "\n"; }

ea::PropertyResult run_check(const ea::EffectAlgebra& E, const std::string& name,
                             const ea::ScanBudget& b) {
    if (name == "rdp") return ea::check_rdp(E, b);
    if (name == "rip") return ea::check_rip(E, b);
    if (name == "dmp") return ea::check_dmp(E, b);
    if (name == "homogeneous") return ea::check_homogeneous(E, b);
    if (name == "lattice") return ea::check_lattice(E, b);
    if (name == "antilattice") return ea::check_antilattice(E, b);
    if (name == "omp") return ea::check_omp(E, b);
    if (name == "mv") return ea::check_mv(E, b);
    throw ea::StructuralError("unknown property '" + name + "'");
}

// ---------------------------------------------------------------------------

int cmd_validate(const std::string& file, const CommonOpts& c) {
    auto j = ea::io::read_json_file(file);
    std::string format = j.value("format", "");
    ea::ValidationReport rep;
    if (format == "ea-fuzzy/1") {
        ea::io::load_fuzzy_json(j, c.vopts()); // throws StructuralError on any defect
        rep.ok = true;
    } else {
        auto tl = ea::io::load_table_json(j, c.vopts());
        rep = std::move(tl.report);
    }
    if (c.json) {
        Json out = ea::rpt::validation_json(rep);
        out["input"] = file;
        emit(out);
    } else {
        if (rep.ok) {
            std::cout << "ok: all effect-algebra axioms hold";
            if (rep.assoc_sampled) std::cout << " (associativity sampled, seed " << rep.seed << ")";
            std::cout << "\n";
        } else {
            for (auto& v : rep.violations)
                std::cout << (v.kind == ea::Violation::Kind::Structural ? "structural: "
                                                                        : "axiom (" + v.axiom + "): ")
                          << v.message << "\n";
        }
    }
    if (rep.has_structural()) return 2;
    return rep.ok ? 0 : 1;
}

int cmd_gen(const std::vector<std::string>& gen_args, const std::string& out_path,
            const CommonOpts& c) {
    ea::Generated g = ea::build_from_generator(gen_args, c.vopts());
    std::string bytes = g.fuzzy ? ea::io::save_fuzzy(*g.fuzzy) : ea::io::save_table(g.algebra);
    if (out_path.empty() || out_path == "-")
        std::cout << bytes;
    else
        ea::io::write_file(out_path, bytes);
    return 0;
}

int cmd_props(const ea::EffectAlgebra& E, const std::string& checks, const CommonOpts& c) {
    auto names = ea::split_on(checks, ',');
    Json results = Json::object();
    bool any_fails = false;
    for (auto& name : names) {
        auto r = run_check(E, name, c.scan());
        any_fails |= r.fails();
        results[name] = ea::rpt::property_json(E, r);
        if (!c.json) {
            std::cout << name << ": " << ea::verdict_name(r.verdict);
            if (!r.witness.empty()) {
                std::cout << "  witness:";
                for (ea::Elem e : r.witness) std::cout << " " << E.label(e);
            }
            if (!r.note.empty()) std::cout << "  (" << r.note << ")";
            std::cout << "\n";
        }
    }
    if (c.json) {
        Json out;
        out["algebra"] = E.name();
        out["seed"] = c.seed;
        out["props"] = std::move(results);
        emit(out);
    }
    return any_fails ? 1 : 0;
}

int cmd_compat(const ea::EffectAlgebra& E, const std::vector<std::string>& pair, bool strong,
               const std::string& joint, const std::string& internal, const CommonOpts& c) {
    Json out;
    out["algebra"] = E.name();
    int rc = 0;
    if (!joint.empty()) {
        auto targets = resolve_label_list(E, joint);
        auto res = ea::jointly_compatible(E, targets);
        if (res.outcome == ea::SearchOutcome::BudgetExceeded)
            throw ea::BudgetError("joint-compatibility search truncated; raise the budget");
        out["query"] = "joint";
        out["targets"] = ea::rpt::labels_json(E, targets);
        out["jointly_compatible"] = res.outcome == ea::SearchOutcome::Witness;
        if (res.witness) out["witness"] = ea::rpt::refinement_witness_json(E, *res.witness);
        rc = res.outcome == ea::SearchOutcome::Witness ? 0 : 1;
    } else if (!internal.empty()) {
        auto members = resolve_label_list(E, internal);
        auto res = ea::internally_compatible(E, members);
        if (res.outcome == ea::SearchOutcome::BudgetExceeded)
            throw ea::BudgetError("internal-compatibility search truncated; raise the budget");
        out["query"] = "internal";
        out["members"] = ea::rpt::labels_json(E, members);
        out["internally_compatible"] = res.outcome == ea::SearchOutcome::Witness;
        if (res.witness) out["witness"] = ea::rpt::refinement_witness_json(E, *res.witness);
        rc = res.outcome == ea::SearchOutcome::Witness ? 0 : 1;
    } else {
        if (pair.size() != 2)
            throw ea::StructuralError("compat: expected two element labels (or --joint/--internal)");
        ea::Elem a = E.find_or_throw(pair[0]);
        ea::Elem b = E.find_or_throw(pair[1]);
        auto w = strong ? ea::strongly_compatible(E, a, b) : ea::compatible(E, a, b);
        out["query"] = strong ? "strong" : "compatible";
        out["a"] = E.label(a);
        out["b"] = E.label(b);
        out["related"] = w.has_value();
        if (w) out["witness"] = ea::rpt::compat_witness_json(E, *w);
        rc = w ? 0 : 1;
    }
    if (c.json)
        emit(out);
    else
        std::cout << out["query"].get<std::string>() << ": "
                  << (rc == 0 ? "yes" : "no") << "\n";
    return rc;
}

int cmd_blocks(const ea::EffectAlgebra& E, const std::string& kind, bool verify,
               const CommonOpts& c) {
    ea::BlocksBudget bb;
    bb.scan = c.scan();
    Json out;
    out["algebra"] = E.name();
    out["kind"] = kind;
    int rc = 0;
    std::vector<ea::Block> blocks;
    if (kind == "strong") blocks = ea::enumerate_blocks(E, bb);
    else if (kind == "ic") blocks = ea::enumerate_ic_blocks(E, bb);
    else if (kind == "rdp") blocks = ea::enumerate_rdp_blocks(E, bb);
    else throw ea::StructuralError("blocks: kind must be strong, ic, or rdp");
    out["blocks"] = Json::array();
    for (auto& b : blocks) out["blocks"].push_back(ea::rpt::block_json(E, b));

    if (verify) {
        if (kind == "strong") {
            auto rep = ea::verify_block_theorem(E, bb);
            Json v;
            v["applicable"] = rep.applicable;
            if (rep.applicable) {
                v["all_subalgebras"] = rep.all_subalgebras;
                v["all_mv"] = rep.all_mv;
                v["all_lattice_closed"] = rep.all_lattice_closed;
                v["covers"] = rep.covers;
                v["ok"] = rep.ok();
                if (!rep.ok()) rc = 1;
            } else {
                v["verdict"] = "not-applicable";
            }
            out["verify"] = std::move(v);
        } else {
            auto rep = ea::verify_homogeneous_block_theorem(E, bb);
            Json v;
            v["applicable"] = rep.applicable;
            if (rep.applicable) {
                v["families_equal"] = rep.families_equal;
                v["covers"] = rep.covers;
                v["ok"] = rep.ok();
                if (!rep.ok()) rc = 1;
            } else {
                v["verdict"] = "not-applicable";
            }
            out["verify"] = std::move(v);
        }
    }
    if (c.json)
        emit(out);
    else {
        for (auto& b : blocks) {
            std::cout << "{";
            for (std::size_t i = 0; i < b.sorted.size(); ++i)
                std::cout << (i ? "," : "") << E.label(b.sorted[i]);
            std::cout << "}";
            if (b.is_mv.has_value()) std::cout << (*b.is_mv ? " [mv]" : " [not mv]");
            if (b.has_rdp.has_value()) std::cout << (*b.has_rdp ? " [rdp]" : " [not rdp]");
            std::cout << "\n";
        }
        if (verify && out.contains("verify"))
            std::cout << "verify: " << out["verify"].dump() << "\n";
    }
    return rc;
}

int cmd_states(const ea::EffectAlgebra& E, bool extreme, bool represent, const CommonOpts& c) {
    Json out;
    out["algebra"] = E.name();
    auto fs = ea::find_state(E);
    out["has_state"] = fs.state.has_value();
    if (fs.state) out["state"] = ea::rpt::state_json(E, *fs.state);
    if (fs.certificate) {
        Json cert;
        cert["verified"] = true; // construction verifies before returning
        out["infeasibility_certificate"] = std::move(cert);
    }
    std::vector<ea::State> ext;
    if (extreme || represent) {
        ext = ea::extreme_states(E);
        out["extreme_count"] = ext.size();
        Json arr = Json::array();
        for (auto& s : ext) arr.push_back(ea::rpt::state_json(E, s));
        out["extreme_states"] = std::move(arr);
    }
    int rc = fs.state ? 0 : 1;
    if (represent) {
        auto od = ea::is_order_determining(E, ext);
        out["order_determining"] = od.order_determining;
        if (od.order_determining) {
            auto rep = ea::function_representation(E, ext);
            Json img;
            img["omega"] = Json::array();
            for (auto& w : rep.image.omega) img["omega"].push_back(w);
            img["functions"] = Json::array();
            for (auto& f : rep.image.functions) img["functions"].push_back(f.label);
            out["representation"] = std::move(img);
        } else {
            out["order_determining_witness"] =
                Json::array({E.label(od.witness_a), E.label(od.witness_b)});
            rc = 1;
        }
    }
    if (c.json)
        emit(out);
    else
        std::cout << out.dump(2) << "\n";
    return rc;
}

int cmd_observable(const ea::EffectAlgebra& E, const std::string& from_spectral,
                   const std::string& spectral_of, const std::string& from_joint,
                   const std::string& out_path, const CommonOpts& c) {
    Json out;
    out["algebra"] = E.name();
    std::string bytes;
    if (!from_spectral.empty()) {
        auto F = ea::io::load_spectral_json(ea::io::read_json_file(from_spectral), E);
        auto rep = ea::observable_from_spectral(E, F, c.scan());
        out["operation"] = "from-spectral";
        out["unique"] = rep.unique;
        out["hypotheses"] = Json{{"rdp_dmp", rep.hyp_rdp_dmp},
                                 {"rip_dmp", rep.hyp_rip_dmp},
                                 {"homogeneous", rep.hyp_homogeneous}};
        bytes = ea::io::save_observable(rep.observable, E);
    } else if (!spectral_of.empty()) {
        auto x = ea::io::load_observable_json(ea::io::read_json_file(spectral_of), E);
        auto F = ea::spectral_family_of(E, x);
        out["operation"] = "spectral-of";
        bytes = ea::io::save_spectral(F, E);
    } else if (!from_joint.empty()) {
        auto targets = resolve_label_list(E, from_joint);
        auto res = ea::jointly_compatible(E, targets);
        if (res.outcome == ea::SearchOutcome::BudgetExceeded)
            throw ea::BudgetError("joint-compatibility search truncated; raise the budget");
        if (res.outcome != ea::SearchOutcome::Witness) {
            std::cout << "targets are not jointly compatible\n";
            return 1;
        }
        auto x = ea::observable_from_jointly_compatible(E, targets, *res.witness);
        out["operation"] = "from-joint";
        auto rng = ea::range_of(E, x);
        out["range"] = ea::rpt::labels_json(E, rng.range);
        bytes = ea::io::save_observable(x, E);
    } else {
        throw ea::StructuralError(
            "observable: one of --from-spectral/--spectral-of/--from-joint required");
    }
    if (out_path.empty() || out_path == "-")
        std::cout << bytes;
    else {
        ea::io::write_file(out_path, bytes);
        if (c.json) emit(out);
    }
    return 0;
}

int cmd_oracle(const ea::EffectAlgebra& E, const std::string& query, const CommonOpts& c) {
    Json out;
    out["algebra"] = E.name();
    out["query"] = query;
    int rc = 0;
    auto colon = query.find(':');
    std::string head = query.substr(0, colon);
    if (query == "blocks") {
        auto ob = ea::oracle::oracle_blocks(E);
        auto fam = [&](const std::vector<std::vector<ea::Elem>>& f) {
            Json a = Json::array();
            for (auto& blk : f) a.push_back(ea::rpt::labels_json(E, blk));
            return a;
        };
        out["strong"] = fam(ob.strong);
        out["ic"] = fam(ob.ic);
        out["rdp"] = fam(ob.rdp);
    } else if (colon == std::string::npos) {
        std::string q = query == "homogeneous" ? "homog" : query;
        auto v = ea::oracle::oracle_check(E, q);
        out["holds"] = v.holds;
        out["tuples"] = v.tuples;
        rc = v.holds ? 0 : 1;
    } else {
        auto elems = resolve_label_list(E, query.substr(colon + 1));
        ea::oracle::OracleVerdict v;
        if (head == "compat" && elems.size() == 2)
            v = ea::oracle::oracle_compat(E, elems[0], elems[1]);
        else if (head == "strong" && elems.size() == 2)
            v = ea::oracle::oracle_strong(E, elems[0], elems[1]);
        else if (head == "joint")
            v = ea::oracle::oracle_joint(E, elems);
        else if (head == "internal")
            v = ea::oracle::oracle_internal(E, elems);
        else
            throw ea::StructuralError("oracle: unknown query '" + query + "'");
        out["holds"] = v.holds;
        out["tuples"] = v.tuples;
        rc = v.holds ? 0 : 1;
    }
    if (c.json)
        emit(out);
    else
        std::cout << out.dump(2) << "\n";
    return rc;
}

int cmd_report(const std::string& file, const std::vector<std::string>& gen_args, bool props,
               const std::string& blocks_kinds, bool states, bool extreme, bool verify,
               const std::vector<std::string>& dmp_witness, const CommonOpts& c) {
    Json out;
    out["tool"] = Json{{"name", "ea"}, {"version", ea::kToolVersion}};
    std::optional<ea::EffectAlgebra> held;
    if (!file.empty()) {
        out["input"] = Json{{"path", file}, {"digest", ea::fnv1a_hex(ea::io::read_file_bytes(file))}};
        held = load_or_die(file, c);
    } else if (!gen_args.empty()) {
        std::string joined;
        for (auto& a : gen_args) joined += a + " ";
        out["input"] = Json{{"generator", gen_args}, {"digest", ea::fnv1a_hex(joined)}};
        held = ea::build_from_generator(gen_args, c.vopts()).algebra;
    } else {
        throw ea::StructuralError("report: provide an input file or --gen arguments");
    }
    const ea::EffectAlgebra& E = *held;
    out["algebra"] = Json{{"name", E.name()},
                          {"carrier", E.size()},
                          // constant fact at finite scale
                          {"monotone_sigma_complete", true}};
    out["seed"] = c.seed;
    out["budget"] = Json{{"max_tuples", c.max_tuples}, {"samples", c.samples}};
    out["legend"] = ea::rpt::verdict_legend();

    int rc = 0;
    Json results = Json::object();
    if (props) {
        Json pj = Json::object();
        for (auto name :
             {"rdp", "rip", "dmp", "homogeneous", "lattice", "antilattice", "omp", "mv"}) {
            auto r = run_check(E, name, c.scan());
            if (r.fails()) rc = 1;
            pj[name] = ea::rpt::property_json(E, r);
        }
        results["props"] = std::move(pj);
    }
    if (!blocks_kinds.empty()) {
        ea::BlocksBudget bb;
        bb.scan = c.scan();
        Json bj = Json::object();
        for (auto& kind : ea::split_on(blocks_kinds, ',')) {
            std::vector<ea::Block> blocks;
            if (kind == "strong") blocks = ea::enumerate_blocks(E, bb);
            else if (kind == "ic") blocks = ea::enumerate_ic_blocks(E, bb);
            else if (kind == "rdp") blocks = ea::enumerate_rdp_blocks(E, bb);
            else throw ea::StructuralError("report: unknown block kind '" + kind + "'");
            Json arr = Json::array();
            for (auto& b : blocks) arr.push_back(ea::rpt::block_json(E, b));
            bj[kind] = std::move(arr);
        }
        results["blocks"] = std::move(bj);
    }
    if (verify) {
        ea::BlocksBudget bb;
        bb.scan = c.scan();
        Json tj = Json::object();
        auto bt = ea::verify_block_theorem(E, bb);
        tj["block_theorem"] =
            bt.applicable ? Json{{"applicable", true}, {"ok", bt.ok()}}
                          : Json{{"applicable", false}, {"verdict", "not-applicable"}};
        if (bt.applicable && !bt.ok()) rc = 1;
        auto hb = ea::verify_homogeneous_block_theorem(E, bb);
        tj["homogeneous_block_theorem"] =
            hb.applicable ? Json{{"applicable", true}, {"ok", hb.ok()}}
                          : Json{{"applicable", false}, {"verdict", "not-applicable"}};
        if (hb.applicable && !hb.ok()) rc = 1;
        results["theorems"] = std::move(tj);
    }
    if (states) {
        Json sj;
        auto fs = ea::find_state(E);
        sj["has_state"] = fs.state.has_value();
        if (fs.state) sj["state"] = ea::rpt::state_json(E, *fs.state);
        if (extreme) {
            auto ext = ea::extreme_states(E);
            sj["extreme_count"] = ext.size();
            Json arr = Json::array();
            for (auto& s : ext) arr.push_back(ea::rpt::state_json(E, s));
            sj["extreme_states"] = std::move(arr);
        }
        results["states"] = std::move(sj);
    }
    if (!dmp_witness.empty()) {
        if (dmp_witness.size() != 3)
            throw ea::StructuralError("--check-dmp-witness needs three tokens: x=.. y=.. z=..");
        ea::Elem x = resolve_witness_token(E, dmp_witness[0]);
        ea::Elem y = resolve_witness_token(E, dmp_witness[1]);
        ea::Elem z = resolve_witness_token(E, dmp_witness[2]);
        auto rep = ea::dmp_triple(E, x, y, z);
        auto label_or_none = [&](ea::Elem e) {
            return e == ea::kNone ? std::string("none") : E.label(e);
        };
        Json dj;
        dj["x"] = E.label(x);
        dj["y"] = E.label(y);
        dj["z"] = E.label(z);
        dj["premise"] = rep.premise;
        dj["x_meet_z"] = label_or_none(rep.x_meet_z);
        dj["y_meet_z"] = label_or_none(rep.y_meet_z);
        dj["d"] = label_or_none(rep.d);
        dj["d_meet_z"] = label_or_none(rep.d_meet_z);
        dj["violates_dmp"] = rep.violates;
        results["dmp_witness"] = std::move(dj);
    }
    out["results"] = std::move(results);
    emit(out);
    return rc;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"finite effect algebras: construction, validation, and analysis"};
    app.require_subcommand(1);

    CommonOpts copts;

    // validate
    std::string v_file;
    auto* validate = app.add_subcommand("validate", "check the effect-algebra axioms of a file");
    validate->add_option("file", v_file, "ea-table/1 or ea-fuzzy/1 file")->required();
    add_common(validate, copts);

    // gen
    auto* gen = app.add_subcommand("gen", "generate an algebra file");
    gen->require_subcommand(1);
    std::string g_out;
    std::uint32_t g_k = 1;
    ea::ConeSpec g_cone;
    std::string g_cone_kind = "std", g_u, g_omega;
    std::vector<std::string> g_files, g_fns;
    auto add_out = [&](CLI::App* sc) {
        sc->add_option("-o,--out", g_out, "output file ('-' = stdout)");
        add_common(sc, copts);
    };
    auto* gen_chain = gen->add_subcommand("chain", "the (k+1)-element chain");
    gen_chain->add_option("k", g_k, "chain parameter k >= 1")->required();
    add_out(gen_chain);
    auto* gen_bool = gen->add_subcommand("boolean", "the Boolean algebra 2^m");
    gen_bool->add_option("m", g_k, "number of atoms")->required();
    add_out(gen_bool);
    auto* gen_mo = gen->add_subcommand("mo", "MO_n (horizontal sum of n diamonds)");
    gen_mo->add_option("n", g_k, "number of atom pairs")->required();
    add_out(gen_mo);
    auto* gen_interval = gen->add_subcommand("interval", "interval algebra over a grid group");
    gen_interval->add_option("--cone", g_cone_kind, "strict | std")->required();
    gen_interval->add_option("--dim", g_cone.dim, "dimension")->required();
    gen_interval->add_option("--den", g_cone.den, "grid denominator")->required();
    gen_interval->add_option("--u", g_u, "unit, comma-separated coordinates")->required();
    add_out(gen_interval);
    auto* gen_hsum = gen->add_subcommand("hsum", "horizontal sum of algebra files");
    gen_hsum->add_option("files", g_files, "input files")->required()->expected(-2);
    add_out(gen_hsum);
    auto* gen_product = gen->add_subcommand("product", "direct product of algebra files");
    gen_product->add_option("files", g_files, "input files")->required()->expected(-2);
    add_out(gen_product);
    auto* gen_fuzzy = gen->add_subcommand("fuzzy", "closure of [0,1]-valued generators");
    gen_fuzzy->add_option("--omega", g_omega, "comma-separated point labels")->required();
    gen_fuzzy->add_option("--fn", g_fns, "generator values, comma-separated per point");
    add_out(gen_fuzzy);

    // props
    std::string p_file, p_checks = "rdp,rip,dmp,homogeneous,lattice,antilattice,omp,mv";
    auto* props = app.add_subcommand("props", "decide structural properties");
    props->add_option("file", p_file)->required();
    props->add_option("--check", p_checks, "comma-separated list of properties");
    add_common(props, copts);

    // compat
    std::string c_file, c_joint, c_internal;
    std::vector<std::string> c_pair;
    bool c_strong = false;
    auto* compat = app.add_subcommand("compat", "compatibility relations");
    compat->add_option("file", c_file)->required();
    compat->add_option("elements", c_pair, "two element labels")->expected(0, 2);
    compat->add_flag("--strong", c_strong, "require a strong witness");
    compat->add_option("--joint", c_joint, "comma-separated targets for joint compatibility");
    compat->add_option("--internal", c_internal, "comma-separated members for internal compatibility");
    add_common(compat, copts);

    // blocks
    std::string b_file, b_kind = "strong";
    bool b_verify = false;
    auto* blocks = app.add_subcommand("blocks", "enumerate blocks");
    blocks->add_option("file", b_file)->required();
    blocks->add_option("--kind", b_kind, "strong | ic | rdp");
    blocks->add_flag("--verify", b_verify, "verify the covering/MV theorems");
    add_common(blocks, copts);

    // states
    std::string s_file;
    bool s_extreme = false, s_represent = false;
    auto* states = app.add_subcommand("states", "states and representations");
    states->add_option("file", s_file)->required();
    states->add_flag("--extreme", s_extreme, "enumerate extreme states");
    states->add_flag("--represent", s_represent, "build the function representation");
    add_common(states, copts);

    // observable
    std::string o_file, o_from_spectral, o_spectral_of, o_from_joint, o_out;
    auto* observable = app.add_subcommand("observable", "discrete observables");
    observable->add_option("file", o_file, "algebra file")->required();
    observable->add_option("--from-spectral", o_from_spectral, "reconstruct from a spectral file");
    observable->add_option("--spectral-of", o_spectral_of, "spectral family of an observable file");
    observable->add_option("--from-joint", o_from_joint, "build from jointly compatible targets");
    observable->add_option("-o,--out", o_out, "output file ('-' = stdout)");
    add_common(observable, copts);

    // oracle
    std::string or_file, or_query;
    auto* oracle = app.add_subcommand("oracle", "naive reference verdicts (test/CI use)");
    oracle->add_option("file", or_file)->required();
    oracle->add_option("--query", or_query,
                       "rdp|rip|dmp|homogeneous|lattice|antilattice|omp|mv|"
                       "compat:a,b|strong:a,b|joint:a,b,..|internal:a,b,..|blocks")
        ->required();
    add_common(oracle, copts);

    // report
    std::string r_file, r_blocks;
    std::vector<std::string> r_gen, r_dmp;
    bool r_props = false, r_states = false, r_extreme = false, r_verify = false;
    auto* report = app.add_subcommand("report", "consolidated JSON report");
    report->add_option("file", r_file, "algebra file");
    report->add_option("--gen", r_gen, "analyze a generated algebra instead of a file")
        ->expected(-1);
    report->add_flag("--props", r_props, "include all property checks");
    report->add_option("--blocks", r_blocks, "comma-separated block kinds to enumerate");
    report->add_flag("--states", r_states, "include state search");
    report->add_flag("--extreme", r_extreme, "include extreme states (with --states)");
    report->add_flag("--verify-theorems", r_verify, "include block-theorem verification");
    report->add_option("--check-dmp-witness", r_dmp, "three tokens: x=.. y=.. z=..")->expected(3);
    add_common(report, copts);

    CLI11_PARSE(app, argc, argv);

    try {
        apply_env_budget(copts);
        if (validate->parsed()) return cmd_validate(v_file, copts);
        if (gen->parsed()) {
            std::vector<std::string> args;
            if (gen_chain->parsed()) args = {"chain", std::to_string(g_k)};
            else if (gen_bool->parsed()) args = {"boolean", std::to_string(g_k)};
            else if (gen_mo->parsed()) args = {"mo", std::to_string(g_k)};
            else if (gen_interval->parsed())
                args = {"interval", "--cone", g_cone_kind, "--dim", std::to_string(g_cone.dim),
                        "--den", std::to_string(g_cone.den), "--u", g_u};
            else if (gen_hsum->parsed()) {
                args = {"hsum"};
                args.insert(args.end(), g_files.begin(), g_files.end());
            } else if (gen_product->parsed()) {
                args = {"product"};
                args.insert(args.end(), g_files.begin(), g_files.end());
            } else if (gen_fuzzy->parsed()) {
                args = {"fuzzy", "--omega", g_omega};
                for (auto& fn : g_fns) {
                    args.push_back("--fn");
                    args.push_back(fn);
                }
            }
            return cmd_gen(args, g_out, copts);
        }
        if (props->parsed()) return cmd_props(load_or_die(p_file, copts), p_checks, copts);
        if (compat->parsed())
            return cmd_compat(load_or_die(c_file, copts), c_pair, c_strong, c_joint, c_internal,
                              copts);
        if (blocks->parsed())
            return cmd_blocks(load_or_die(b_file, copts), b_kind, b_verify, copts);
        if (states->parsed())
            return cmd_states(load_or_die(s_file, copts), s_extreme, s_represent, copts);
        if (observable->parsed())
            return cmd_observable(load_or_die(o_file, copts), o_from_spectral, o_spectral_of,
                                  o_from_joint, o_out, copts);
        if (oracle->parsed()) return cmd_oracle(load_or_die(or_file, copts), or_query, copts);
        if (report->parsed())
            return cmd_report(r_file, r_gen, r_props, r_blocks, r_states, r_extreme, r_verify,
                              r_dmp, copts);
    } catch (const ea::StructuralError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const ea::BudgetError& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return 2;
    } catch (const ea::PreconditionError& e) {
        std::cerr << "precondition: " << e.what() << "\n";
        return 2;
    } catch (const ea::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
