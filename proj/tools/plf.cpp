#include "plf/classify.hpp"
#include "plf/construct.hpp"
#include "plf/corpus.hpp"
#include "plf/json_io.hpp"
#include "plf/words.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <random>

using namespace plf;

namespace {

// A map slot is filled by a JSON file path, a "word:<text>" literal, or a
// --word occurrence (words fill the slots left empty by positionals, in
// order).
struct SlotArgs {
    std::vector<std::string> positionals;
    std::vector<std::string> words;
    bool normalize = false;
};

void add_slot_opts(CLI::App* cmd, SlotArgs& sa, size_t nslots,
                   const char* label) {
    cmd->add_option("inputs", sa.positionals, label)
        ->expected(0, (int)nslots);
    cmd->add_option("--word", sa.words,
                    "group word in x0, x1, x2, ... filling a map slot")
        ->allow_extra_args(false);
    cmd->add_flag("--normalize", sa.normalize,
                  "accept and canonicalize non-normalized maps");
}

PLMap load_slot(const std::string& src, bool normalize) {
    if (src.rfind("word:", 0) == 0)
        return eval_word(parse_word(src.substr(5)));
    return map_from_json(load_json_file(src), normalize);
}

std::vector<PLMap> resolve_slots(const SlotArgs& sa, size_t n) {
    std::vector<std::string> sources = sa.positionals;
    for (const auto& w : sa.words) sources.push_back("word:" + w);
    if (sources.size() != n)
        throw ParseError("expected " + std::to_string(n) +
                         " map inputs, got " + std::to_string(sources.size()));
    std::vector<PLMap> maps;
    for (const auto& s : sources) maps.push_back(load_slot(s, sa.normalize));
    return maps;
}

void write_out(const std::string& path, const std::string& text) {
    if (path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(path);
    if (!out)
        throw ParseError("cannot write file: " + path);
    out << text;
}

int run_check_pair(const SlotArgs& sa, const std::string& method) {
    auto maps = resolve_slots(sa, 2);
    const PLMap& f0 = maps[0];
    const PLMap& f1 = maps[1];
    if (method == "oracle") {
        bool ok = decide_oracle(f0, f1);
        std::cout << (ok ? "standard" : "not_standard") << "\n";
        return ok ? 0 : 1;
    }
    Verdict v = decide_structural(f0, f1);
    if (method == "structural") {
        if (v.decision == Decision::Indeterminate) {
            bool ok = decide_oracle(f0, f1);
            std::cout << "indeterminate (" << v.reason
                      << "); resolved by oracle: "
                      << (ok ? "standard" : "not_standard") << "\n";
            return ok ? 0 : 1;
        }
        std::cout << decision_str(v.decision) << "\n";
        return v.decision == Decision::Standard ? 0 : 1;
    }
    bool ok = decide_oracle(f0, f1);
    if (v.decision == Decision::Indeterminate) {
        std::cout << (ok ? "standard" : "not_standard")
                  << " (structural: indeterminate; oracle decides)\n";
        return ok ? 0 : 1;
    }
    bool sok = v.decision == Decision::Standard;
    if (sok != ok) {
        std::cerr << "method disagreement: structural says "
                  << decision_str(v.decision) << ", oracle says "
                  << (ok ? "standard" : "not_standard") << "\n";
        return 2;
    }
    std::cout << (ok ? "standard" : "not_standard")
              << " (both methods agree)\n";
    return ok ? 0 : 1;
}

int run_demo(uint64_t seed, int nwords) {
    PLMap f0 = eval_word(parse_word("x1^2 x2^-1 x1^-1"));
    PLMap f1 = eval_word(parse_word("x1 x2^2 x3^-1 x2^-1 x1^-1"));
    bool oracle = decide_oracle(f0, f1);
    std::cout << "oracle standard: " << (oracle ? "true" : "false") << "\n";
    auto supp = subgroup_support({x0(), f0, f1});
    std::cout << "subgroup support:";
    for (const auto& iv : supp) std::cout << " " << iv.str();
    std::cout << "\n";
    std::cout << "endpoint germ slopes:\n";
    const char* names[3] = {"x0", "f0", "f1"};
    PLMap gens[3] = {x0(), f0, f1};
    for (int i = 0; i < 3; ++i) {
        auto [a, b] = boundary_slopes(gens[i]);
        std::cout << "  " << names[i] << ": " << rat_str(a) << " at 0, "
                  << rat_str(b) << " at 1\n";
    }
    std::mt19937_64 rng(seed);
    int near0 = 0;
    bool bicond = true, product = true;
    for (int w = 0; w < nwords; ++w) {
        size_t len = 1 + draw(rng, 20);
        PLMap m;
        for (size_t i = 0; i < len; ++i) {
            PLMap g = gens[draw(rng, 3)];
            if (draw(rng, 2) == 0) g = invert(g);
            m = compose(m, g);
        }
        auto [s0, s1] = boundary_slopes(m);
        bool id0 = s0 == 1, id1 = s1 == 1;
        if (id0) ++near0;
        if (id0 != id1) bicond = false;
        if (s0 * s1 != 1) product = false;
    }
    std::cout << "words sampled: " << nwords << " (identity near 0: " << near0
              << ")\n";
    std::cout << "identity near 0 iff identity near 1: "
              << (bicond ? "true" : "false") << "\n";
    std::cout << "product of endpoint germ slopes is 1: "
              << (product ? "true" : "false") << "\n";
    return (oracle && bicond && product) ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact piecewise-linear interval maps and generating pairs"};
    app.require_subcommand(1);
    int rc = 0;

    auto* ceval = app.add_subcommand("eval", "evaluate a map at a point");
    auto se = std::make_shared<SlotArgs>();
    auto mapfile = std::make_shared<std::string>();
    auto at = std::make_shared<std::string>();
    add_slot_opts(ceval, *se, 1, "map input");
    ceval->add_option("--map", *mapfile, "map file");
    ceval->add_option("--at", *at, "point, as num/den")->required();
    ceval->callback([se, mapfile, at, &rc] {
        SlotArgs sa = *se;
        if (!mapfile->empty()) sa.positionals.push_back(*mapfile);
        auto maps = resolve_slots(sa, 1);
        std::cout << rat_str(evaluate(maps[0], parse_rational(*at))) << "\n";
        rc = 0;
    });

    auto* ccomp = app.add_subcommand("compose", "compose two maps (A then B)");
    auto sc = std::make_shared<SlotArgs>();
    auto comp_out = std::make_shared<std::string>("-");
    add_slot_opts(ccomp, *sc, 2, "map inputs A B");
    ccomp->add_option("-o,--output", *comp_out, "output file, - for stdout");
    ccomp->callback([sc, comp_out, &rc] {
        auto maps = resolve_slots(*sc, 2);
        write_out(*comp_out, dump_json(map_to_json(compose(maps[0], maps[1]))));
        rc = 0;
    });

    auto* cinv = app.add_subcommand("inverse", "invert a map");
    auto si = std::make_shared<SlotArgs>();
    auto inv_out = std::make_shared<std::string>("-");
    add_slot_opts(cinv, *si, 1, "map input");
    cinv->add_option("-o,--output", *inv_out, "output file, - for stdout");
    cinv->callback([si, inv_out, &rc] {
        auto maps = resolve_slots(*si, 1);
        write_out(*inv_out, dump_json(map_to_json(invert(maps[0]))));
        rc = 0;
    });

    auto* cword = app.add_subcommand("word", "evaluate a group word to a map");
    auto word_text = std::make_shared<std::string>();
    auto word_out = std::make_shared<std::string>("-");
    cword->add_option("text", *word_text, "word in x0, x1, x2, ...")
        ->required();
    cword->add_option("-o,--output", *word_out, "output file, - for stdout");
    cword->callback([word_text, word_out, &rc] {
        PLMap m = eval_word(parse_word(*word_text));
        write_out(*word_out, dump_json(map_to_json(m)));
        rc = 0;
    });

    auto* corb = app.add_subcommand("orbitals", "orbital decomposition");
    auto so = std::make_shared<SlotArgs>();
    add_slot_opts(corb, *so, 1, "map input");
    corb->callback([so, &rc] {
        auto maps = resolve_slots(*so, 1);
        std::cout << dump_json(orbitals_report(orbitals_of(maps[0])));
        rc = 0;
    });

    auto* cchk = app.add_subcommand(
        "check-pair", "decide whether (f0, f1) generates a standard copy");
    auto sk = std::make_shared<SlotArgs>();
    auto method = std::make_shared<std::string>("both");
    add_slot_opts(cchk, *sk, 2, "map inputs f0 f1");
    cchk->add_option("--method", *method, "structural, oracle, or both")
        ->check(CLI::IsMember({"structural", "oracle", "both"}));
    cchk->callback([sk, method, &rc] { rc = run_check_pair(*sk, *method); });

    auto* ccls = app.add_subcommand("classify", "full structural report");
    auto scl = std::make_shared<SlotArgs>();
    add_slot_opts(ccls, *scl, 2, "map inputs f0 f1");
    ccls->callback([scl, &rc] {
        auto maps = resolve_slots(*scl, 2);
        Verdict v = decide_structural(maps[0], maps[1]);
        std::cout << dump_json(verdict_report(v, maps[0]));
        rc = 0;
    });

    auto* cmk = app.add_subcommand("make-nice",
                                   "build a nice pair from a spec file");
    auto mk_spec = std::make_shared<std::string>();
    auto mk_out = std::make_shared<std::string>();
    auto mk_norm = std::make_shared<bool>(false);
    cmk->add_option("--spec", *mk_spec, "spec JSON file")->required();
    cmk->add_option("-o,--output", *mk_out, "output directory")->required();
    cmk->add_flag("--normalize", *mk_norm,
                  "accept non-normalized maps in the spec");
    cmk->callback([mk_spec, mk_out, mk_norm, &rc] {
        NicePairSpec spec =
            nice_spec_from_json(load_json_file(*mk_spec), *mk_norm);
        auto [f0, f1] = build_nice_pair(spec);
        std::filesystem::create_directories(*mk_out);
        std::string p0 = *mk_out + "/f0.json", p1 = *mk_out + "/f1.json";
        write_out(p0, dump_json(map_to_json(f0)));
        write_out(p1, dump_json(map_to_json(f1)));
        std::cout << p0 << "\n" << p1 << "\n";
        rc = 0;
    });

    auto* cprt = app.add_subcommand("perturb",
                                    "apply one perturbation step to f1");
    auto sp = std::make_shared<SlotArgs>();
    auto prt_step = std::make_shared<std::string>();
    auto prt_out = std::make_shared<std::string>("-");
    add_slot_opts(cprt, *sp, 2, "map inputs f0 f1");
    cprt->add_option("--step", *prt_step, "step JSON file")->required();
    cprt->add_option("-o,--output", *prt_out, "output file, - for stdout");
    cprt->callback([sp, prt_step, prt_out, &rc] {
        auto maps = resolve_slots(*sp, 2);
        PerturbationStep st =
            step_from_json(load_json_file(*prt_step), sp->normalize);
        write_out(*prt_out,
                  dump_json(map_to_json(perturb(maps[0], maps[1], st))));
        rc = 0;
    });

    auto* cdec = app.add_subcommand("decompose",
                                    "decompose g1 over f0 into a trace");
    auto sd = std::make_shared<SlotArgs>();
    auto dec_out = std::make_shared<std::string>("-");
    add_slot_opts(cdec, *sd, 2, "map inputs f0 g1");
    cdec->add_option("-o,--output", *dec_out, "output file, - for stdout");
    cdec->callback([sd, dec_out, &rc] {
        auto maps = resolve_slots(*sd, 2);
        DecompositionTrace tr = decompose(maps[0], maps[1]);
        write_out(*dec_out, dump_json(trace_to_json(tr)));
        rc = 0;
    });

    auto* crep = app.add_subcommand("replay", "replay a trace against f0");
    auto sr = std::make_shared<SlotArgs>();
    auto rep_out = std::make_shared<std::string>("-");
    add_slot_opts(crep, *sr, 2, "map input f0, then trace file");
    crep->add_option("-o,--output", *rep_out, "output file, - for stdout");
    crep->callback([sr, rep_out, &rc] {
        // Last positional is the trace; the map slot comes from what is left.
        if (sr->positionals.empty())
            throw ParseError("replay needs a trace file argument");
        SlotArgs sa = *sr;
        std::string trace_path = sa.positionals.back();
        sa.positionals.pop_back();
        auto maps = resolve_slots(sa, 1);
        DecompositionTrace tr =
            trace_from_json(load_json_file(trace_path), sr->normalize);
        PLMap g1 = replay(maps[0], tr.nice_f1, tr.steps);
        write_out(*rep_out, dump_json(map_to_json(g1)));
        rc = 0;
    });

    auto* cwit = app.add_subcommand(
        "witness", "one-sided support witness for a standard pair");
    auto sw = std::make_shared<SlotArgs>();
    add_slot_opts(cwit, *sw, 2, "map inputs f0 f1");
    cwit->callback([sw, &rc] {
        auto maps = resolve_slots(*sw, 2);
        UbiquityWitness w = ubiquity_witness(maps[0], maps[1]);
        Json j;
        j["window"] = Json{{"lo", rat_str(w.window.lo)},
                           {"hi", rat_str(w.window.hi)}};
        j["element"] = w.element;
        j["end"] = w.end == End::NearLo ? "lo" : "hi";
        j["map"] = map_to_json(w.element_map);
        std::cout << dump_json(j);
        rc = 0;
    });

    auto* cdemo = app.add_subcommand("demo", "built-in demonstrations");
    auto demo_what = std::make_shared<std::string>();
    auto demo_seed = std::make_shared<uint64_t>(0);
    auto demo_words = std::make_shared<int>(1000);
    cdemo->add_option("name", *demo_what, "demo name (counterexample)")
        ->required();
    cdemo->add_option("--seed", *demo_seed, "random seed");
    cdemo->add_option("--words", *demo_words, "number of sampled words");
    cdemo->callback([demo_what, demo_seed, demo_words, &rc] {
        if (*demo_what != "counterexample")
            throw ParseError("unknown demo: " + *demo_what);
        rc = run_demo(*demo_seed, *demo_words);
    });

    try {
        if (const char* cap = std::getenv("PLF_ITER_CAP"))
            set_default_iter_cap(std::stol(cap));
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return rc;
}
