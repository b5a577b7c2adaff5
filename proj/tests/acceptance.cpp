// Acceptance suite. Runs every top-level product requirement as one timed
// check and prints one PASS/FAIL line each. argv[1] is the path to the CLI
// binary, exercised through a shell for the end-to-end checks.

#include "plf/classify.hpp"
#include "plf/construct.hpp"
#include "plf/corpus.hpp"
#include "plf/json_io.hpp"
#include "plf/words.hpp"

#include <chrono>
#include <cstdio>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace plf;

namespace {

std::string g_cli;
int g_failures = 0;

struct Shell {
    int status = -1;
    std::string out;
};

Shell run_shell(const std::string& args) {
    Shell r;
    std::string cmd = "'" + g_cli + "' " + args + " 2>/dev/null";
    FILE* p = popen(cmd.c_str(), "r");
    if (!p) return r;
    char buf[4096];
    size_t n;
    while ((n = fread(buf, 1, sizeof buf, p)) > 0) r.out.append(buf, n);
    int rc = pclose(p);
    r.status = rc >= 0 ? WEXITSTATUS(rc) : -1;
    return r;
}

using Clock = std::chrono::steady_clock;

class Criterion {
  public:
    Criterion(int num, std::string name, long budget_ms)
        : num_(num), name_(std::move(name)), budget_ms_(budget_ms),
          start_(Clock::now()) {}

    void expect(bool ok, const std::string& what) {
        if (!ok) {
            bad_.push_back(what);
            if (bad_.size() <= 8)
                std::cout << "       | " << what << "\n";
        }
    }

    void note(const std::string& text) { notes_.push_back(text); }

    bool finish() {
        auto ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                      Clock::now() - start_)
                      .count();
        if (budget_ms_ > 0 && ms > budget_ms_)
            bad_.push_back("over time budget: " + std::to_string(ms) + " ms > " +
                           std::to_string(budget_ms_) + " ms");
        bool ok = bad_.empty();
        std::cout << (ok ? "PASS" : "FAIL") << " " << num_ << ": " << name_
                  << " (" << ms << " ms";
        for (const auto& s : notes_) std::cout << "; " << s;
        if (!ok) std::cout << "; " << bad_.size() << " violation(s)";
        std::cout << ")\n";
        if (!ok) ++g_failures;
        return ok;
    }

  private:
    int num_;
    std::string name_;
    long budget_ms_;
    Clock::time_point start_;
    std::vector<std::string> bad_;
    std::vector<std::string> notes_;
};

bool meets(const Interval& a, const Interval& b) {
    return a.hi > b.lo && a.lo < b.hi;
}

// Conditions and quantities of one f0-orbital in rising coordinates; falling
// orbitals are analyzed on the mirrored pair.
struct UpView {
    PLMap f0, f1;
    Orbital orb;
};

UpView up_view(const PLMap& f0, const PLMap& f1, const Orbital& A) {
    if (A.sign == Sign::Down)
        return {mirrored(f0), mirrored(f1), mirrored(A)};
    return {f0, f1, A};
}

void criterion1() {
    Criterion c(1, "standard generators and defining relations", 1000);
    Shell r = run_shell("check-pair word:x0 word:x1 --method both");
    c.expect(r.status == 0, "check-pair exit code " + std::to_string(r.status));
    c.expect(r.out == "standard (both methods agree)\n",
             "unexpected check-pair output: " + r.out);
    auto rep = check_standard_relations(x0(), x1());
    c.expect(rep.rel1 && rep.rel2 && !rep.commuting && rep.standard(),
             "relation report on (x0, x1)");
    PLMap u = compose(x0(), invert(x1()));
    c.expect(is_identity(commutator(u, conjugate(x1(), x0()))),
             "first defining relation as a map equality");
    c.expect(is_identity(commutator(u, conjugate(x1(), compose(x0(), x0())))),
             "second defining relation as a map equality");
    c.finish();
}

void criterion2() {
    Criterion c(2, "conjugation tower x_j^(x_i) = x_{j+1}", 1000);
    for (int i = 0; i <= 5; ++i)
        for (int j = i + 1; j <= 5; ++j)
            c.expect(conjugate(xk(j), xk(i)) == xk(j + 1),
                     "tower fails at i=" + std::to_string(i) +
                         " j=" + std::to_string(j));
    c.finish();
}

constexpr size_t kCorpusSize = 600;
constexpr uint64_t kCorpusSeed = 20260816ull;

void criterion3(const std::vector<GeneratedPair>& corpus) {
    Criterion c(3, "differential decision suite on the corpus", 60000);
    c.expect(corpus.size() >= 500, "corpus too small");
    size_t indet = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto& g = corpus[i];
        bool ora = decide_oracle(g.f0, g.f1);
        c.expect(ora == g.expected,
                 "expected flag wrong at " + std::to_string(i));
        Verdict v = decide_structural(g.f0, g.f1);
        if (v.decision == Decision::Indeterminate) {
            ++indet;
            continue;
        }
        bool st = v.decision == Decision::Standard;
        c.expect(st == ora, "methods disagree at " + std::to_string(i) +
                                " (" + pair_mode_str(g.mode) + "): structural " +
                                decision_str(v.decision) + ", reason: " +
                                v.reason);
    }
    std::ostringstream rate;
    rate << "indeterminate " << indet << "/" << corpus.size()
         << ", every one resolved by the oracle";
    c.note(rate.str());
    c.finish();
}

void criterion4(const std::vector<GeneratedPair>& corpus) {
    Criterion c(4, "necessary conditions on oracle-positive pairs", 0);
    size_t positives = 0, orbitals_checked = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto& g = corpus[i];
        if (!decide_oracle(g.f0, g.f1)) continue;
        ++positives;
        std::string at = " at " + std::to_string(i);
        c.expect(nesting_check(g.f0, g.f1).ok, "orbital straddle" + at);
        auto orbs = orbitals_of(g.f0);
        auto f1orbs = orbitals_of(g.f1);
        for (const auto& fo : f1orbs)
            for (const auto& oo : orbs)
                c.expect(!fo.span.strictly_contains(oo.span),
                         "f1 orbital strictly contains an f0 orbital" + at);
        for (const auto& A : orbs) {
            bool touch = false, common = false;
            for (const auto& ob : f1orbs) {
                if (!meets(ob.span, A.span)) continue;
                touch = true;
                if (ob.span == A.span) common = true;
            }
            if (!touch || common) continue;
            UpView uv = up_view(g.f0, g.f1, A);
            try {
                auto an = analyze_orbital(uv.f0, uv.f1, uv.orb);
                ++orbitals_checked;
                c.expect(an.conditions.all(), "condition fails" + at);
                if (!an.conditions.all()) continue;
                Rational p = *an.p_or_rho;
                Rational r = *an.r;
                Rational b1 = an.f1_orbitals.front().span.lo;
                Rational bn = an.f1_orbitals.back().span.lo;
                c.expect(evaluate(uv.f0, b1) >= r,
                         "first coincidence precedes the first orbital image" +
                             at);
                auto rep = coincidence_points(uv.f0, uv.f1, uv.orb.span);
                auto confined = [&](const Rational& q) {
                    if (q < p)
                        c.expect(bn < q, "coincidence " + rat_str(q) +
                                             " outside (b_n, p)" + at);
                };
                for (const auto& q : rep.isolated) confined(q);
                for (const auto& iv : rep.agreements) {
                    if (iv.hi < p) {
                        confined(iv.lo);
                        confined(iv.hi);
                    } else if (iv.lo < p) {
                        confined(iv.lo);
                    }
                }
            } catch (const Error& e) {
                c.expect(false, std::string("analysis failed: ") + e.what() + at);
            }
        }
    }
    c.note(std::to_string(positives) + " positives, " +
           std::to_string(orbitals_checked) + " orbitals checked");
    c.finish();
}

void criterion5(const std::vector<GeneratedPair>& corpus) {
    Criterion c(5, "second relation holds whenever i-v hold everywhere", 0);
    size_t passing = 0, rel1_fails = 0;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const auto& g = corpus[i];
        bool applicable = nesting_check(g.f0, g.f1).ok;
        bool pass = true;
        auto orbs = orbitals_of(g.f0);
        auto f1orbs = orbitals_of(g.f1);
        for (const auto& A : orbs) {
            if (!applicable || !pass) break;
            bool touch = false, common = false;
            for (const auto& ob : f1orbs) {
                if (ob.span.strictly_contains(A.span)) applicable = false;
                if (!meets(ob.span, A.span)) continue;
                touch = true;
                if (ob.span == A.span) common = true;
            }
            if (!touch) continue;
            if (common) {
                if (!is_identity_on(commutator(g.f0, g.f1), A.span))
                    pass = false;
                continue;
            }
            UpView uv = up_view(g.f0, g.f1, A);
            try {
                auto an = analyze_orbital(uv.f0, uv.f1, uv.orb);
                if (!an.conditions.all()) pass = false;
            } catch (const Error&) {
                applicable = false;
            }
        }
        if (!applicable || !pass) continue;
        ++passing;
        PLMap u = compose(g.f0, invert(g.f1));
        if (!is_identity(commutator(u, conjugate(g.f1, g.f0)))) ++rel1_fails;
        c.expect(
            is_identity(commutator(u, conjugate(g.f1, compose(g.f0, g.f0)))),
            "second relation fails at " + std::to_string(i) + " (" +
                pair_mode_str(g.mode) + ")");
    }
    c.note(std::to_string(passing) + " pairs pass i-v everywhere, " +
           std::to_string(rel1_fails) + " of them fail the first relation");
    c.finish();
}

void criterion6(const std::vector<GeneratedPair>& corpus) {
    Criterion c(6, "decompose/replay round trip on standard pairs", 30000);
    size_t done = 0;
    for (size_t i = 0; i < corpus.size() && done < 100; ++i) {
        const auto& g = corpus[i];
        if (!decide_oracle(g.f0, g.f1)) continue;
        ++done;
        std::string at = " at " + std::to_string(i);
        try {
            auto tr = decompose(g.f0, g.f1);
            c.expect(replay(g.f0, tr.nice_f1, tr.steps) == g.f1,
                     "replay does not reproduce g1" + at);
            auto orbs = orbitals_of(g.f0);
            auto nforbs = orbitals_of(tr.nice_f1);
            for (const auto& A : orbs) {
                bool touch = false, common = false;
                for (const auto& ob : nforbs) {
                    if (!meets(ob.span, A.span)) continue;
                    touch = true;
                    if (ob.span == A.span) common = true;
                }
                if (!touch || common) continue;
                UpView uv = up_view(g.f0, tr.nice_f1, A);
                auto an = analyze_orbital(uv.f0, uv.f1, uv.orb);
                c.expect(an.nice, "decomposed pair is not nice" + at);
                c.expect(!an.has_outside(),
                         "decomposed pair keeps a detached orbital" + at);
            }
        } catch (const Error& e) {
            c.expect(false, std::string("decomposition failed: ") + e.what() + at);
        }
    }
    c.expect(done == 100, "fewer than 100 standard pairs in the corpus");
    c.finish();
}

void criterion7() {
    Criterion c(7, "common root certificates on shared powers", 0);
    std::mt19937_64 rng(4242);
    size_t done = 0;
    while (done < 100) {
        PLMap phi = eval_word(random_word(rng, 3, 6, 2));
        auto orbs = orbitals_of(phi);
        if (orbs.empty()) continue;
        const Orbital& O = orbs[draw(rng, orbs.size())];
        long m = 1 + (long)draw(rng, 6), n = 1 + (long)draw(rng, 6);
        if (draw(rng, 2) == 0) m = -m;
        if (draw(rng, 2) == 0) n = -n;
        PLMap g = power(phi, m), h = power(phi, n);
        std::string at = " at trial " + std::to_string(done);
        try {
            RootCertificate cert = common_root(g, h, O.span);
            c.expect(power(cert.root, cert.exp_g) == g,
                     "root power does not reproduce g" + at);
            c.expect(power(cert.root, cert.exp_h) == h,
                     "root power does not reproduce h" + at);
        } catch (const Error& e) {
            c.expect(false, std::string("no certificate: ") + e.what() + at);
        }
        ++done;
    }
    c.finish();
}

void criterion8() {
    Criterion c(8, "conjugation maps orbitals and preserves end slopes", 0);
    std::mt19937_64 rng(515151);
    size_t done = 0;
    while (done < 200) {
        PLMap f = eval_word(random_word(rng, 3, 8, 2));
        PLMap h = eval_word(random_word(rng, 3, 8, 2));
        if (orbitals_of(f).empty()) continue;
        ++done;
        std::string at = " at trial " + std::to_string(done);
        PLMap conj = conjugate(f, h);
        auto orbs = orbitals_of(f);
        auto got = orbitals_of(conj);
        std::vector<Orbital> want;
        for (const auto& O : orbs) want.push_back(corresponding_orbital(O, h));
        c.expect(got == want, "conjugate orbitals differ from images" + at);
        if (got != want) continue;
        for (size_t k = 0; k < orbs.size(); ++k)
            c.expect(boundary_slopes(f, orbs[k]) ==
                         boundary_slopes(conj, got[k]),
                     "end slopes change under conjugation" + at);
    }
    c.finish();
}

void criterion9() {
    Criterion c(9, "single-orbital subgroup with matching end germs", 30000);
    PLMap f0 = eval_word(parse_word("x1^2 x2^-1 x1^-1"));
    PLMap f1 = eval_word(parse_word("x1 x2^2 x3^-1 x2^-1 x1^-1"));
    c.expect(decide_oracle(f0, f1), "pair is not oracle standard");
    auto supp = subgroup_support({x0(), f0, f1});
    c.expect(supp.size() == 1 && supp[0].lo == 0 && supp[0].hi == 1,
             "subgroup support is not the whole interval");
    PLMap gens[3] = {x0(), f0, f1};
    std::mt19937_64 rng(99);
    int near0 = 0;
    for (int w = 0; w < 1000; ++w) {
        size_t len = 1 + draw(rng, 20);
        PLMap m;
        for (size_t i = 0; i < len; ++i) {
            PLMap g = gens[draw(rng, 3)];
            if (draw(rng, 2) == 0) g = invert(g);
            m = compose(m, g);
        }
        auto [s0, s1] = boundary_slopes(m);
        if (s0 == 1) ++near0;
        c.expect((s0 == 1) == (s1 == 1),
                 "identity near one end only, word " + std::to_string(w));
        c.expect(s0 * s1 == 1,
                 "end germ slopes do not cancel, word " + std::to_string(w));
    }
    c.note("1000 words, " + std::to_string(near0) + " trivial near 0");
    c.finish();
}

void criterion10() {
    Criterion c(10, "word images lie in F with the commutator criterion", 0);
    std::mt19937_64 rng(606060);
    for (int t = 0; t < 200; ++t) {
        PLMap m = eval_word(random_word(rng, 4, 12, 3));
        std::string at = " at trial " + std::to_string(t);
        c.expect(is_in_F(m), "word image leaves F" + at);
        auto [s0, s1] = boundary_slopes(m);
        c.expect(is_in_F_prime(m) == (s0 == 1 && s1 == 1),
                 "derived subgroup test disagrees with end slopes" + at);
    }
    c.finish();
}

} // namespace

int main(int argc, char** argv) {
    if (argc < 2) {
        std::cerr << "usage: acceptance <path-to-cli>\n";
        return 2;
    }
    g_cli = argv[1];
    criterion1();
    criterion2();
    auto corpus = build_corpus(kCorpusSize, kCorpusSeed);
    criterion3(corpus);
    criterion4(corpus);
    criterion5(corpus);
    criterion6(corpus);
    criterion7();
    criterion8();
    criterion9();
    criterion10();
    if (g_failures == 0) {
        std::cout << "all criteria passed\n";
        return 0;
    }
    std::cout << g_failures << " criteria failed\n";
    return 1;
}
