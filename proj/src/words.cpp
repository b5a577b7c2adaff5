#include "plf/words.hpp"

#include <sstream>

namespace plf {

GenWord make_word(std::vector<Letter> letters) {
    std::vector<Letter> out;
    for (const auto& l : letters) {
        if (l.index < 0) throw DomainError("negative generator index");
        if (l.exponent == 0) continue;
        if (!out.empty() && out.back().index == l.index) {
            out.back().exponent += l.exponent;
            if (out.back().exponent == 0) out.pop_back();
        } else {
            out.push_back(l);
        }
    }
    return GenWord{std::move(out)};
}

GenWord parse_word(const std::string& text) {
    std::vector<Letter> letters;
    std::istringstream in(text);
    std::string tok;
    while (in >> tok) {
        auto bad = [&]() -> ParseError { return ParseError("bad token: '" + tok + "'"); };
        if (tok.size() < 2 || tok[0] != 'x') throw bad();
        size_t i = 1;
        while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i]))) ++i;
        if (i == 1) throw bad();
        int index;
        long exponent = 1;
        try {
            index = std::stoi(tok.substr(1, i - 1));
            if (i < tok.size()) {
                if (tok[i] != '^' || i + 1 == tok.size()) throw bad();
                size_t used = 0;
                const std::string rest = tok.substr(i + 1);
                exponent = std::stol(rest, &used);
                if (used != rest.size()) throw bad();
            }
        } catch (const ParseError&) {
            throw;
        } catch (const std::exception&) {
            throw bad();
        }
        letters.push_back({index, exponent});
    }
    return make_word(std::move(letters));
}

std::string word_str(const GenWord& w) {
    std::string out;
    for (const auto& l : w.letters) {
        if (!out.empty()) out += ' ';
        out += "x" + std::to_string(l.index);
        if (l.exponent != 1) out += "^" + std::to_string(l.exponent);
    }
    return out;
}

const PLMap& x0() {
    static const PLMap m = make_plmap({{0, 0},
                                       {Rational(1, 4), Rational(1, 2)},
                                       {Rational(1, 2), Rational(3, 4)},
                                       {1, 1}});
    return m;
}

const PLMap& x1() {
    static const PLMap m = make_plmap({{0, 0},
                                       {Rational(1, 2), Rational(1, 2)},
                                       {Rational(5, 8), Rational(3, 4)},
                                       {Rational(3, 4), Rational(7, 8)},
                                       {1, 1}});
    return m;
}

PLMap xk(int k) {
    if (k < 0) throw DomainError("negative generator index");
    if (k == 0) return x0();
    if (k == 1) return x1();
    return conjugate(x1(), power(x0(), k - 1));
}

PLMap eval_word(const GenWord& w) {
    PLMap acc = PLMap::identity();
    for (const auto& l : w.letters)
        acc = compose(acc, power(xk(l.index), l.exponent));
    return acc;
}

bool is_in_F(const PLMap& f) {
    const auto& pts = f.points();
    for (const auto& p : pts)
        if (!is_dyadic(p.x) || !is_dyadic(p.y)) return false;
    for (size_t i = 1; i < pts.size(); ++i) {
        const Rational slope =
            Rational(pts[i].y - pts[i - 1].y) / Rational(pts[i].x - pts[i - 1].x);
        if (!is_pow2_rational(slope)) return false;
    }
    return true;
}

bool is_in_F_prime(const PLMap& f) {
    if (!is_in_F(f)) throw DomainError("map is not in F");
    return initial_slope(f) == 1 && final_slope(f) == 1;
}

RelationReport check_standard_relations(const PLMap& f0, const PLMap& f1) {
    const PLMap u = compose(f0, invert(f1));
    const PLMap c1 = commutator(u, conjugate(f1, f0));
    const PLMap c2 = commutator(u, conjugate(f1, compose(f0, f0)));
    RelationReport rep;
    rep.rel1 = is_identity(c1);
    rep.rel2 = is_identity(c2);
    rep.commuting = is_identity(commutator(f0, f1));
    if (!rep.rel1) rep.rel1_witness = first_moved_point(c1);
    if (!rep.rel2) rep.rel2_witness = first_moved_point(c2);
    return rep;
}

std::optional<long> x0_germ_exponent(const PLMap& h, Anchor end) {
    const bool near_zero = end == Anchor::FromLeft;
    const auto slope = near_zero ? initial_slope(h) : final_slope(h);
    const auto e = pow2_exponent(slope);
    if (!e) return std::nullopt;
    // x0 has slope 2 at 0 and 1/2 at 1, so x0^n has slopes 2^n and 2^-n.
    const long n = near_zero ? *e : -*e;
    const PLMap g = power(x0(), n);
    if (h == g) return n;
    const Rational anchor = near_zero ? Rational(0) : Rational(1);
    if (!agreement_bound(h, g, anchor, near_zero ? Anchor::FromLeft : Anchor::FromRight))
        return std::nullopt;
    return n;
}

} // namespace plf
