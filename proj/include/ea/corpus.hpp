#pragma once

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ea/blocks.hpp"
#include "ea/io.hpp"
#include "ea/oracle.hpp"
#include "ea/observables.hpp"
#include "ea/report.hpp"
#include "ea/states.hpp"

namespace ea {

// ---------------------------------------------------------------------------
// generator invocations (shared by `ea gen` and the corpus fixtures)

struct Generated {
    EffectAlgebra algebra;
    std::optional<FuzzySetAlgebra> fuzzy; // present for the fuzzy generator
};

using PathResolver = std::function<std::filesystem::path(const std::string&)>;

inline std::vector<std::string> split_on(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : s) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else
            cur += c;
    }
    out.push_back(cur);
    return out;
}

/// Builds an algebra from a generator argument vector, e.g.
/// {"chain","4"}, {"mo","2"},
/// {"interval","--cone","strict","--dim","2","--den","10","--u","1,1"},
/// {"hsum",FILE,FILE,...}, {"product",FILE,...},
/// {"fuzzy","--omega","w1,w2","--fn","1,0","--fn","1/2,1"}.
inline Generated build_from_generator(const std::vector<std::string>& args,
                                      const ValidationOptions& opts = {},
                                      const PathResolver& resolve = {}) {
    if (args.empty()) throw StructuralError("generator: empty argument list");
    const std::string& kind = args[0];
    auto want_count = [&](std::size_t k) {
        if (args.size() != k)
            throw StructuralError("generator '" + kind + "': expected " + std::to_string(k - 1) +
                                  " argument(s)");
    };
    auto to_u32 = [&](const std::string& s) -> std::uint32_t {
        try {
            return static_cast<std::uint32_t>(std::stoul(s));
        } catch (...) {
            throw StructuralError("generator: '" + s + "' is not a number");
        }
    };

    if (kind == "chain") {
        want_count(2);
        return {mv_chain(to_u32(args[1]), opts), std::nullopt};
    }
    if (kind == "boolean") {
        want_count(2);
        return {boolean_algebra(to_u32(args[1]), opts), std::nullopt};
    }
    if (kind == "mo") {
        want_count(2);
        return {mo_algebra(to_u32(args[1]), opts), std::nullopt};
    }
    if (kind == "interval") {
        ConeSpec cone;
        std::string u_str;
        for (std::size_t i = 1; i < args.size(); i += 2) {
            if (i + 1 >= args.size())
                throw StructuralError("generator interval: dangling option " + args[i]);
            const std::string& key = args[i];
            const std::string& val = args[i + 1];
            if (key == "--cone") {
                if (val == "strict")
                    cone.kind = ConeKind::StrictQuadrant;
                else if (val == "std")
                    cone.kind = ConeKind::Standard;
                else
                    throw StructuralError("generator interval: cone must be 'strict' or 'std'");
            } else if (key == "--dim")
                cone.dim = to_u32(val);
            else if (key == "--den")
                cone.den = static_cast<std::int64_t>(to_u32(val));
            else if (key == "--u")
                u_str = val;
            else
                throw StructuralError("generator interval: unknown option " + key);
        }
        if (u_str.empty()) throw StructuralError("generator interval: missing --u");
        std::vector<std::int64_t> u;
        for (auto& part : split_on(u_str, ',')) {
            Rat v = rat_parse_or_throw(part);
            Rat scaled = v * cone.den;
            if (denominator(scaled) != 1)
                throw StructuralError("generator interval: u coordinate '" + part +
                                      "' is not on the 1/" + std::to_string(cone.den) + " grid");
            u.push_back(static_cast<std::int64_t>(numerator(scaled)));
        }
        return {interval_algebra(cone, std::move(u), opts), std::nullopt};
    }
    if (kind == "hsum" || kind == "product") {
        if (args.size() < 3)
            throw StructuralError("generator '" + kind + "': needs at least two operand files");
        std::vector<EffectAlgebra> loaded;
        for (std::size_t i = 1; i < args.size(); ++i) {
            std::filesystem::path p = resolve ? resolve(args[i]) : std::filesystem::path(args[i]);
            auto tl = io::load_algebra_file(p, opts);
            if (!tl.report.ok)
                throw StructuralError("generator '" + kind + "': operand " + args[i] +
                                      " fails validation");
            loaded.push_back(std::move(*tl.algebra));
        }
        std::vector<const EffectAlgebra*> ptrs;
        for (auto& a : loaded) ptrs.push_back(&a);
        if (kind == "hsum") return {horizontal_sum(ptrs, opts), std::nullopt};
        return {direct_product(ptrs, opts), std::nullopt};
    }
    if (kind == "fuzzy") {
        std::vector<std::string> omega;
        std::vector<std::vector<Rat>> gens;
        for (std::size_t i = 1; i < args.size(); i += 2) {
            if (i + 1 >= args.size())
                throw StructuralError("generator fuzzy: dangling option " + args[i]);
            if (args[i] == "--omega") {
                omega = split_on(args[i + 1], ',');
            } else if (args[i] == "--fn") {
                std::vector<Rat> g;
                for (auto& part : split_on(args[i + 1], ','))
                    g.push_back(rat_parse_or_throw(part));
                gens.push_back(std::move(g));
            } else
                throw StructuralError("generator fuzzy: unknown option " + args[i]);
        }
        if (omega.empty()) throw StructuralError("generator fuzzy: missing --omega");
        // the closure is deterministic; build one view to return as the
        // algebra and keep a second inside the fuzzy form
        EffectAlgebra view = fuzzy_closure(omega, gens, opts).view;
        return {std::move(view), fuzzy_closure(std::move(omega), gens, opts)};
    }
    throw StructuralError("generator: unknown kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// fixtures

struct Fixture {
    std::string name;
    std::filesystem::path dir;
    io::Json spec; // parsed expected.json
};

inline std::vector<Fixture> corpus_list(const std::filesystem::path& corpus_dir) {
    std::vector<Fixture> out;
    if (!std::filesystem::is_directory(corpus_dir))
        throw StructuralError("corpus directory not found: " + corpus_dir.string());
    std::vector<std::filesystem::path> dirs;
    for (auto& entry : std::filesystem::directory_iterator(corpus_dir))
        if (entry.is_directory() && std::filesystem::exists(entry.path() / "expected.json"))
            dirs.push_back(entry.path());
    std::sort(dirs.begin(), dirs.end());
    for (auto& d : dirs)
        out.push_back({d.filename().string(), d, io::read_json_file(d / "expected.json")});
    return out;
}

struct FixtureOutcome {
    std::string name;
    bool pass = true;
    std::vector<std::string> failures;

    void fail(std::string msg) {
        pass = false;
        failures.push_back(std::move(msg));
    }
};

namespace detail {

inline const io::Json* opt_field(const io::Json& j, const char* name) {
    auto it = j.find(name);
    return it == j.end() ? nullptr : &*it;
}

inline PathResolver fixture_resolver(const std::filesystem::path& corpus_root) {
    return [corpus_root](const std::string& ref) -> std::filesystem::path {
        if (!ref.empty() && ref[0] == '@') {
            // "@l3" -> corpus_root/l3/algebra.json, "@fz:half" -> fuzzy.json
            std::string name = ref.substr(1);
            if (name.rfind("fz:", 0) == 0)
                return corpus_root / name.substr(3) / "fuzzy.json";
            return corpus_root / name / "algebra.json";
        }
        return ref;
    };
}

inline void check_property_expectation(FixtureOutcome& out, const EffectAlgebra& E,
                                       const std::string& prop, const io::Json& exp,
                                       const PropertyResult& r) {
    std::string want = exp.at("value").get<std::string>();
    std::string got = r.holds() ? "holds" : (r.fails() ? "fails" : verdict_name(r.verdict));
    if (want != got) {
        out.fail("prop " + prop + ": expected " + want + ", got " + got);
        return;
    }
    if (auto* w = opt_field(exp, "witness")) {
        std::vector<Elem> expected_witness;
        for (auto& lab : *w) expected_witness.push_back(E.find_or_throw(lab.get<std::string>()));
        if (expected_witness != r.witness) {
            out.fail("prop " + prop + ": witness differs from expected");
            return;
        }
        if (!oracle::witness_confirms_failure(E, prop, r.witness))
            out.fail("prop " + prop + ": stored witness does not recheck definitionally");
    } else if (r.fails() && !r.witness.empty()) {
        if (!oracle::witness_confirms_failure(E, prop, r.witness))
            out.fail("prop " + prop + ": computed witness does not recheck definitionally");
    }
}

} // namespace detail

/// Re-runs one fixture: regenerate the algebra, byte-compare stored
/// artifacts, evaluate every expectation.
inline FixtureOutcome corpus_verify(const Fixture& fx, const ScanBudget& scan = {},
                                    const ValidationOptions& vopts = {}) {
    FixtureOutcome out;
    out.name = fx.name;
    try {
        auto resolve = detail::fixture_resolver(fx.dir.parent_path());
        std::vector<std::string> gen_args;
        for (auto& a : fx.spec.at("generator")) gen_args.push_back(a.get<std::string>());
        Generated gen = build_from_generator(gen_args, vopts, resolve);
        const EffectAlgebra& E = gen.algebra;

        // artifact regeneration must be byte-identical
        if (auto* art = detail::opt_field(fx.spec, "artifact")) {
            std::string fname = art->get<std::string>();
            std::string regenerated =
                gen.fuzzy ? io::save_fuzzy(*gen.fuzzy) : io::save_table(E);
            std::string stored = io::read_file_bytes(fx.dir / fname);
            if (regenerated != stored) out.fail("artifact " + fname + " is not byte-stable");
        }

        const io::Json& expect = fx.spec.at("expect");
        if (auto* carrier = detail::opt_field(expect, "carrier")) {
            auto want = carrier->at("value").get<std::uint64_t>();
            if (want != E.size())
                out.fail("carrier: expected " + std::to_string(want) + ", got " +
                         std::to_string(E.size()));
        }
        if (auto* props = detail::opt_field(expect, "props")) {
            for (auto it = props->begin(); it != props->end(); ++it) {
                const std::string prop = it.key();
                PropertyResult r;
                if (prop == "rdp") r = check_rdp(E, scan);
                else if (prop == "rip") r = check_rip(E, scan);
                else if (prop == "dmp") r = check_dmp(E, scan);
                else if (prop == "homogeneous") r = check_homogeneous(E, scan);
                else if (prop == "lattice") r = check_lattice(E, scan);
                else if (prop == "antilattice") r = check_antilattice(E, scan);
                else if (prop == "omp") r = check_omp(E, scan);
                else if (prop == "mv") r = check_mv(E, scan);
                else {
                    out.fail("unknown property expectation '" + prop + "'");
                    continue;
                }
                detail::check_property_expectation(out, E, prop, it.value(), r);
            }
        }
        auto block_family = [&](const char* key, BlockKind kind) {
            auto* exp = detail::opt_field(expect, key);
            if (!exp) return;
            BlocksBudget bb;
            bb.scan = scan;
            std::vector<Block> blocks;
            if (kind == BlockKind::Strong) blocks = enumerate_blocks(E, bb);
            else if (kind == BlockKind::Ic) blocks = enumerate_ic_blocks(E, bb);
            else blocks = enumerate_rdp_blocks(E, bb);
            std::vector<std::vector<std::string>> got;
            for (auto& b : blocks) {
                std::vector<std::string> labs;
                for (Elem e : b.sorted) labs.push_back(E.label(e));
                got.push_back(std::move(labs));
            }
            std::vector<std::vector<std::string>> want;
            for (auto& fam : exp->at("value"))
                want.push_back(fam.get<std::vector<std::string>>());
            if (got != want) out.fail(std::string(key) + ": families differ");
        };
        block_family("blocks_strong", BlockKind::Strong);
        block_family("blocks_ic", BlockKind::Ic);
        block_family("blocks_rdp", BlockKind::Rdp);

        if (auto* bt = detail::opt_field(expect, "block_theorem_ok")) {
            BlocksBudget bb;
            bb.scan = scan;
            auto rep = verify_block_theorem(E, bb);
            if (rep.ok() != bt->at("value").get<bool>()) out.fail("block_theorem_ok differs");
        }
        if (auto* hbt = detail::opt_field(expect, "homogeneous_block_theorem_ok")) {
            BlocksBudget bb;
            bb.scan = scan;
            auto rep = verify_homogeneous_block_theorem(E, bb);
            if (rep.ok() != hbt->at("value").get<bool>())
                out.fail("homogeneous_block_theorem_ok differs");
        }
        if (auto* hs = detail::opt_field(expect, "has_state")) {
            auto got = find_state(E);
            if (got.state.has_value() != hs->at("value").get<bool>()) out.fail("has_state differs");
            if (got.state && !got.state->validate(E)) out.fail("found state fails validation");
        }
        if (auto* sv = detail::opt_field(expect, "state_values")) {
            auto got = find_state(E);
            if (!got.state)
                out.fail("state_values: no state found");
            else
                for (auto it = sv->at("value").begin(); it != sv->at("value").end(); ++it) {
                    Elem e = E.find_or_throw(it.key());
                    if (rat_to_string(got.state->values[e]) != it.value().get<std::string>())
                        out.fail("state value at " + it.key() + " differs");
                }
        }
        if (auto* ec = detail::opt_field(expect, "extreme_count")) {
            auto ex = extreme_states(E);
            if (ex.size() != ec->at("value").get<std::size_t>())
                out.fail("extreme_count: expected " +
                         std::to_string(ec->at("value").get<std::size_t>()) + ", got " +
                         std::to_string(ex.size()));
        }
        if (auto* apc = detail::opt_field(expect, "all_pairs_compatible")) {
            bool want = apc->at("value").get<bool>();
            Elem wa = kNone, wb = kNone;
            bool all = true;
            for (Elem a = 0; a < E.size() && all; ++a)
                for (Elem b = a; b < E.size(); ++b)
                    if (!compatible(E, a, b)) {
                        all = false;
                        wa = a;
                        wb = b;
                        break;
                    }
            if (all != want) out.fail("all_pairs_compatible differs");
            if (!all) {
                std::vector<Elem> w = {wa, wb};
                if (!oracle::witness_confirms_failure(E, "not-compatible", w))
                    out.fail("incompatible-pair witness does not recheck");
            }
        }
        if (auto* dts = detail::opt_field(expect, "dmp_triples")) {
            for (auto& dt : *dts) {
                Elem x = E.find_or_throw(dt.at("x").get<std::string>());
                Elem y = E.find_or_throw(dt.at("y").get<std::string>());
                Elem z = E.find_or_throw(dt.at("z").get<std::string>());
                auto rep = dmp_triple(E, x, y, z);
                auto label_or_none = [&](Elem e) {
                    return e == kNone ? std::string("none") : E.label(e);
                };
                std::string id = "dmp_triple(" + dt.at("x").get<std::string>() + ")";
                if (label_or_none(rep.x_meet_z) != dt.at("x_meet_z").get<std::string>())
                    out.fail(id + ": x^z differs");
                if (label_or_none(rep.y_meet_z) != dt.at("y_meet_z").get<std::string>())
                    out.fail(id + ": y^z differs");
                if (label_or_none(rep.d_meet_z) != dt.at("d_meet_z").get<std::string>())
                    out.fail(id + ": (y-x)^z differs");
                if (rep.violates != dt.at("violates").get<bool>()) out.fail(id + ": verdict differs");
                if (rep.violates) {
                    std::vector<Elem> w = {x, y, z};
                    if (!oracle::witness_confirms_failure(E, "dmp", w))
                        out.fail(id + ": violation does not recheck definitionally");
                }
            }
        }
        if (auto* oe = detail::opt_field(expect, "order_embedded")) {
            if (!gen.fuzzy)
                out.fail("order_embedded: fixture is not a fuzzy algebra");
            else {
                bool ok = true;
                const auto& F = *gen.fuzzy;
                for (Elem a = 0; a < E.size() && ok; ++a)
                    for (Elem b = 0; b < E.size(); ++b)
                        if (E.leq(a, b) != FuzzySetAlgebra::pointwise_leq(F.functions[a].values,
                                                                          F.functions[b].values)) {
                            ok = false;
                            break;
                        }
                if (ok != oe->at("value").get<bool>()) out.fail("order_embedded differs");
            }
        }

        // observable fixtures
        if (auto* obsf = detail::opt_field(fx.spec, "observable")) {
            auto x = io::load_observable_json(io::read_json_file(fx.dir / obsf->get<std::string>()), E);
            auto F = spectral_family_of(E, x);
            if (auto* spf = detail::opt_field(fx.spec, "spectral")) {
                auto Fstored =
                    io::load_spectral_json(io::read_json_file(fx.dir / spf->get<std::string>()), E);
                if (auto* sm = detail::opt_field(expect, "spectral_matches"))
                    if ((F == Fstored) != sm->at("value").get<bool>())
                        out.fail("spectral_matches differs");
            }
            auto rec = observable_from_spectral(E, F, scan);
            if (auto* rt = detail::opt_field(expect, "roundtrip"))
                if ((rec.observable == x) != rt->at("value").get<bool>())
                    out.fail("roundtrip differs");
            if (auto* uq = detail::opt_field(expect, "reconstruction_unique"))
                if (rec.unique != uq->at("value").get<bool>()) out.fail("uniqueness differs");
            auto rng = range_of(E, x);
            if (auto* rg = detail::opt_field(expect, "range")) {
                std::vector<std::string> got;
                for (Elem e : rng.range) got.push_back(E.label(e));
                if (got != rg->at("value").get<std::vector<std::string>>())
                    out.fail("range differs");
            }
            if (auto* ric = detail::opt_field(expect, "range_internally_compatible")) {
                auto res = internally_compatible(E, rng.range);
                if ((res.outcome == SearchOutcome::Witness) != ric->at("value").get<bool>())
                    out.fail("range_internally_compatible differs");
            }
            auto flag = [&](const char* key, bool got) {
                if (auto* f = detail::opt_field(expect, key))
                    if (f->at("value").get<bool>() != got) out.fail(std::string(key) + " differs");
            };
            flag("hyp_rdp_dmp", rec.hyp_rdp_dmp);
            flag("hyp_rip_dmp", rec.hyp_rip_dmp);
            flag("hyp_homogeneous", rec.hyp_homogeneous);
        }
        if (auto* valid = detail::opt_field(expect, "valid")) {
            // regenerated constructors always validate; this re-checks the
            // stored artifact file through the loader
            if (auto* art = detail::opt_field(fx.spec, "artifact")) {
                std::string fname = art->get<std::string>();
                if (fname == "algebra.json") {
                    auto tl = io::load_table_json(io::read_json_file(fx.dir / fname), vopts);
                    if (tl.report.ok != valid->at("value").get<bool>()) out.fail("valid differs");
                }
            }
        }
    } catch (const Error& e) {
        out.fail(std::string("error: ") + e.what());
    } catch (const std::exception& e) {
        out.fail(std::string("unexpected error: ") + e.what());
    }
    return out;
}

} // namespace ea
