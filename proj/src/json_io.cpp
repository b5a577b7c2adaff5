#include "plf/json_io.hpp"
#include "plf/words.hpp"

#include <fstream>
#include <sstream>

namespace plf {

namespace {

Rational rational_from_json(const Json& j, bool normalize) {
    if (!j.is_string())
        throw ParseError("expected a rational string \"num/den\"");
    std::string s = j.get<std::string>();
    Rational q = parse_rational(s);
    // Canonical form is lowest terms with positive denominator, always
    // rendered with the slash.
    if (!normalize && rat_str(q) != s)
        throw ParseError("rational not in canonical form: \"" + s + "\"");
    return q;
}

const Json& need(const Json& j, const char* key) {
    if (!j.is_object())
        throw ParseError("expected a JSON object");
    auto it = j.find(key);
    if (it == j.end())
        throw ParseError(std::string("missing key \"") + key + "\"");
    return *it;
}

long need_integer(const Json& j, const char* key) {
    const Json& v = need(j, key);
    if (!v.is_number_integer())
        throw ParseError(std::string("key \"") + key + "\" must be an integer");
    return v.get<long>();
}

size_t need_index(const Json& j, const char* key) {
    long n = need_integer(j, key);
    if (n < 0)
        throw ParseError(std::string("key \"") + key + "\" must be nonnegative");
    return (size_t)n;
}

std::vector<Point> points_from_json(const Json& arr, bool normalize) {
    if (!arr.is_array())
        throw ParseError("\"breakpoints\" must be an array");
    std::vector<Point> pts;
    for (const auto& e : arr) {
        Point pt;
        pt.x = rational_from_json(need(e, "x"), normalize);
        pt.y = rational_from_json(need(e, "y"), normalize);
        pts.push_back(pt);
    }
    return pts;
}

Json point_to_json(const Point& pt) {
    return Json{{"x", rat_str(pt.x)}, {"y", rat_str(pt.y)}};
}

Json orbital_to_json(const Orbital& o) {
    return Json{{"lo", rat_str(o.span.lo)},
                {"hi", rat_str(o.span.hi)},
                {"sign", sign_str(o.sign)}};
}

const char* role_str(OrbitalRole r) {
    switch (r) {
    case OrbitalRole::Disjoint: return "disjoint";
    case OrbitalRole::Common: return "common";
    case OrbitalRole::Analyzed: return "analyzed";
    }
    return "?";
}

} // namespace

Json map_to_json(const PLMap& f) {
    Json arr = Json::array();
    for (const auto& pt : f.points()) arr.push_back(point_to_json(pt));
    return Json{{"breakpoints", arr}};
}

PLMap map_from_json(const Json& j, bool normalize) {
    std::vector<Point> pts = points_from_json(need(j, "breakpoints"), normalize);
    PLMap f = make_plmap(pts);
    if (!normalize && f.points() != pts)
        throw ParseError("breakpoints are not in normalized form "
                         "(pass --normalize to canonicalize)");
    return f;
}

Json orbitals_report(const std::vector<Orbital>& orbs) {
    Json arr = Json::array();
    for (const auto& o : orbs) arr.push_back(orbital_to_json(o));
    return Json{{"orbitals", arr}};
}

Json verdict_report(const Verdict& v, const PLMap& f0) {
    Json rep;
    rep["decision"] = decision_str(v.decision);
    rep["reason"] = v.reason;
    Json arr = Json::array();
    auto orbs = orbitals_of(f0);
    if (v.roles.size() == orbs.size()) {
        for (size_t i = 0; i < orbs.size(); ++i) {
            Json entry;
            entry["orbital"] = orbital_to_json(orbs[i]);
            entry["kind"] = role_str(v.roles[i]);
            for (const auto& [idx, an] : v.analyses) {
                if (idx != i) continue;
                entry["p"] = an.p_or_rho ? Json(rat_str(*an.p_or_rho)) : Json();
                entry["r"] = an.r ? Json(rat_str(*an.r)) : Json();
                entry["conditions"] = Json{{"i", an.conditions.i},
                                           {"ii", an.conditions.ii},
                                           {"iii", an.conditions.iii},
                                           {"iv", an.conditions.iv},
                                           {"v", an.conditions.v}};
                Json f1arr = Json::array();
                for (const auto& o : an.f1_orbitals)
                    f1arr.push_back(orbital_to_json(o));
                entry["f1_orbitals"] = f1arr;
                Json cats = Json::array();
                for (auto c : an.categories) cats.push_back(category_str(c));
                entry["categories"] = cats;
                entry["nice"] = an.nice;
            }
            arr.push_back(entry);
        }
    }
    rep["orbitals"] = arr;
    return rep;
}

Json step_to_json(const PerturbationStep& st) {
    Json j;
    j["orbital"] = st.orbital;
    j["h"] = map_to_json(st.h);
    j["t"] = st.t;
    j["k"] = st.k;
    j["case"] = step_case_str(st.kase);
    if (st.s) j["s"] = rat_str(*st.s);
    return j;
}

PerturbationStep step_from_json(const Json& j, bool normalize) {
    PerturbationStep st;
    st.orbital = need_index(j, "orbital");
    st.h = map_from_json(need(j, "h"), normalize);
    st.t = need_integer(j, "t");
    st.k = need_integer(j, "k");
    if (j.is_object() && j.contains("case")) {
        const Json& c = j.at("case");
        if (!c.is_string())
            throw ParseError("key \"case\" must be a string");
        st.kase = step_case_from(c.get<std::string>());
    }
    if (j.is_object() && j.contains("s"))
        st.s = rational_from_json(j.at("s"), normalize);
    return st;
}

Json trace_to_json(const DecompositionTrace& tr) {
    Json steps = Json::array();
    for (const auto& st : tr.steps) steps.push_back(step_to_json(st));
    return Json{{"nice_f1", map_to_json(tr.nice_f1)}, {"steps", steps}};
}

DecompositionTrace trace_from_json(const Json& j, bool normalize) {
    DecompositionTrace tr;
    tr.nice_f1 = map_from_json(need(j, "nice_f1"), normalize);
    const Json& steps = need(j, "steps");
    if (!steps.is_array())
        throw ParseError("\"steps\" must be an array");
    for (const auto& e : steps) tr.steps.push_back(step_from_json(e, normalize));
    return tr;
}

NicePairSpec nice_spec_from_json(const Json& j, bool normalize) {
    NicePairSpec spec;
    const Json& f0 = need(j, "f0");
    if (f0.is_object() && f0.contains("word")) {
        const Json& w = f0.at("word");
        if (!w.is_string())
            throw ParseError("key \"word\" must be a string");
        spec.f0 = eval_word(parse_word(w.get<std::string>()));
    } else {
        spec.f0 = map_from_json(f0, normalize);
    }
    const Json& choices = need(j, "choices");
    if (!choices.is_array())
        throw ParseError("\"choices\" must be an array");
    for (const auto& e : choices) {
        OrbitalChoice ch;
        ch.orbital = need_index(e, "orbital");
        ch.p = rational_from_json(need(e, "p"), normalize);
        if (e.contains("filler"))
            ch.filler = points_from_json(e.at("filler"), normalize);
        spec.choices.push_back(ch);
    }
    if (j.contains("commuting")) {
        const Json& comm = j.at("commuting");
        if (!comm.is_array())
            throw ParseError("\"commuting\" must be an array");
        for (const auto& e : comm) {
            CommutingChoice cc;
            cc.orbital = need_index(e, "orbital");
            cc.power = need_integer(e, "power");
            spec.commuting.push_back(cc);
        }
    }
    return spec;
}

Json parse_json_text(const std::string& text) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

Json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in)
        throw ParseError("cannot open file: " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse_json_text(ss.str());
}

std::string dump_json(const Json& j) {
    return j.dump(2) + "\n";
}

} // namespace plf
