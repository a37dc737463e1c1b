#include "hkbase/io.hpp"

#include <fstream>
#include <ostream>
#include <set>
#include <sstream>

#include "hkbase/errors.hpp"

namespace hkbase {

namespace {

void reject_unknown(const json& obj, const std::set<std::string>& allowed, const std::string& where)
{
    for (const auto& [key, value] : obj.items()) {
        if (!allowed.count(key)) {
            throw InputError(where + ": unknown field '" + key + "'");
        }
    }
}

const json& require(const json& obj, const std::string& key, const std::string& where)
{
    if (!obj.contains(key)) {
        throw InputError(where + ": missing field '" + key + "'");
    }
    return obj.at(key);
}

Rational rational_field(const json& v, const std::string& where)
{
    try {
        if (v.is_number_integer()) {
            return Rational(v.get<std::int64_t>());
        }
        if (v.is_string()) {
            return parse_rational(v.get<std::string>());
        }
    } catch (const InputError& e) {
        throw InputError(where + ": " + e.what());
    }
    throw InputError(where + ": expected an integer or a \"p/q\" string");
}

std::int64_t int_field(const json& v, const std::string& where)
{
    if (!v.is_number_integer()) {
        throw InputError(where + ": expected an integer");
    }
    return v.get<std::int64_t>();
}

Primitivity primitivity_field(const json& v, const std::string& where)
{
    if (v.is_boolean()) {
        return v.get<bool>() ? Primitivity::yes : Primitivity::no;
    }
    if (v.is_string()) {
        const auto s = v.get<std::string>();
        if (s == "yes") {
            return Primitivity::yes;
        }
        if (s == "no") {
            return Primitivity::no;
        }
        if (s == "unknown") {
            return Primitivity::unknown;
        }
    }
    throw InputError(where + ": expected \"yes\", \"no\" or \"unknown\"");
}

RRPolynomial rr_field(const json& v, int n)
{
    if (!v.is_object()) {
        throw InputError("/rr: expected an object");
    }
    reject_unknown(v, {"preset", "n", "coefficients"}, "/rr");
    if (v.contains("preset")) {
        if (v.contains("coefficients")) {
            throw InputError("/rr: give either 'preset' or 'coefficients'");
        }
        const auto name = v.at("preset").get<std::string>();
        const int pn = v.contains("n") ? static_cast<int>(int_field(v.at("n"), "/rr/n")) : n;
        return preset(name, pn);
    }
    const auto& coeffs = require(v, "coefficients", "/rr");
    if (!coeffs.is_array()) {
        throw InputError("/rr/coefficients: expected an array");
    }
    RRPolynomial p;
    p.n = v.contains("n") ? static_cast<int>(int_field(v.at("n"), "/rr/n")) : n;
    p.name = "custom";
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        p.coeffs.push_back(rational_field(coeffs[i], "/rr/coefficients/" + std::to_string(i)));
    }
    const auto check = validate(p);
    if (!check.valid) {
        throw InputError("/rr: polynomial rejected: " + check.violations.front());
    }
    return p;
}

json rationals(const std::vector<Rational>& values)
{
    json out = json::array();
    for (const auto& v : values) {
        out.push_back(to_string(v));
    }
    return out;
}

} // namespace

Configuration parse_config_document(const json& doc)
{
    if (!doc.is_object()) {
        throw InputError("document root must be an object");
    }
    reject_unknown(doc, {"n", "mode", "basis", "gram", "mobile", "components", "m_primitive", "a_ample", "rr"}, "/");

    const int n = static_cast<int>(int_field(require(doc, "n", "/"), "/n"));
    ParityMode mode = ParityMode::even;
    if (doc.contains("mode")) {
        const auto m = doc.at("mode");
        if (m == "even") {
            mode = ParityMode::even;
        } else if (m == "general") {
            mode = ParityMode::general;
        } else {
            throw InputError("/mode: expected \"even\" or \"general\"");
        }
    }

    const auto& gram_rows = require(doc, "gram", "/");
    if (!gram_rows.is_array() || gram_rows.empty()) {
        throw InputError("/gram: expected a nonempty array of rows");
    }
    const std::size_t rank = gram_rows.size();
    std::vector<std::vector<Rational>> rows(rank);
    for (std::size_t i = 0; i < rank; ++i) {
        const auto where = "/gram/" + std::to_string(i);
        if (!gram_rows[i].is_array() || gram_rows[i].size() != rank) {
            throw InputError(where + ": expected a row of length " + std::to_string(rank));
        }
        for (std::size_t j = 0; j < rank; ++j) {
            rows[i].push_back(rational_field(gram_rows[i][j], where + "/" + std::to_string(j)));
        }
    }

    std::vector<std::string> labels;
    if (doc.contains("basis")) {
        const auto& basis = doc.at("basis");
        if (!basis.is_array() || basis.size() != rank) {
            throw InputError("/basis: expected " + std::to_string(rank) + " labels");
        }
        for (const auto& l : basis) {
            if (!l.is_string()) {
                throw InputError("/basis: labels must be strings");
            }
            labels.push_back(l.get<std::string>());
        }
    } else {
        for (std::size_t i = 0; i < rank; ++i) {
            labels.push_back("e" + std::to_string(i));
        }
    }

    const auto mobile = int_field(require(doc, "mobile", "/"), "/mobile");
    if (mobile < 0 || static_cast<std::size_t>(mobile) >= rank) {
        throw InputError("/mobile: index out of range");
    }

    const auto& comps = require(doc, "components", "/");
    if (!comps.is_array()) {
        throw InputError("/components: expected an array");
    }
    std::vector<std::size_t> order{static_cast<std::size_t>(mobile)};
    std::vector<std::int64_t> mults;
    std::set<std::size_t> seen{static_cast<std::size_t>(mobile)};
    for (std::size_t c = 0; c < comps.size(); ++c) {
        const auto where = "/components/" + std::to_string(c);
        const auto& entry = comps[c];
        if (!entry.is_object()) {
            throw InputError(where + ": expected an object");
        }
        reject_unknown(entry, {"index", "multiplicity"}, where);
        const auto index = int_field(require(entry, "index", where), where + "/index");
        if (index < 0 || static_cast<std::size_t>(index) >= rank) {
            throw InputError(where + "/index: out of range");
        }
        if (!seen.insert(static_cast<std::size_t>(index)).second) {
            throw InputError(where + "/index: basis element used twice");
        }
        order.push_back(static_cast<std::size_t>(index));
        mults.push_back(entry.contains("multiplicity") ? int_field(entry.at("multiplicity"), where + "/multiplicity") : 1);
    }
    if (order.size() != rank) {
        throw InputError("/components: every basis element other than the mobile class must be a component");
    }

    GramLattice lattice;
    try {
        lattice = GramLattice::from_rows(rows, mode);
    } catch (const InputError& e) {
        throw InputError(std::string("/gram: ") + e.what());
    }
    std::vector<std::vector<std::int64_t>> basis;
    std::vector<std::string> ordered_labels;
    for (auto i : order) {
        std::vector<std::int64_t> e(rank, 0);
        e[i] = 1;
        basis.push_back(std::move(e));
        ordered_labels.push_back(labels[i]);
    }

    const auto primitive = doc.contains("m_primitive") ? primitivity_field(doc.at("m_primitive"), "/m_primitive")
                                                       : Primitivity::unknown;
    bool ample = false;
    if (doc.contains("a_ample")) {
        if (!doc.at("a_ample").is_boolean()) {
            throw InputError("/a_ample: expected a boolean");
        }
        ample = doc.at("a_ample").get<bool>();
    }
    std::optional<RRPolynomial> rr;
    if (doc.contains("rr")) {
        rr = rr_field(doc.at("rr"), n);
    }
    return Configuration(n, lattice.transformed(basis), mults, primitive, ample, rr, ordered_labels);
}

Configuration load_config_document(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw InputError("cannot open " + path);
    }
    json doc;
    try {
        doc = json::parse(in);
    } catch (const json::parse_error& e) {
        throw InputError(path + ": " + e.what());
    }
    return parse_config_document(doc);
}

json to_json(const ClassificationResult& r, const Configuration& c)
{
    json out;
    out["class"] = class_tag(r);
    if (const auto* p = std::get_if<PrimeFixed>(&r)) {
        out["qB"] = std::to_string(p->qB);
    } else if (const auto* ch = std::get_if<Chain>(&r)) {
        out["k"] = ch->k;
        out["d"] = std::to_string(ch->d);
        out["q_last"] = std::to_string(ch->q_last);
        json order = json::array();
        for (auto j : ch->order) {
            order.push_back(c.labels().at(j + 1));
        }
        out["order"] = order;
    } else {
        const auto& v = std::get<Contradiction>(r).violation;
        out["rule"] = v.rule;
        out["detail"] = v.detail;
        out["witness"] = v.witness;
    }
    return out;
}

json to_json(const Configuration& c)
{
    json out;
    out["n"] = c.n();
    out["mode"] = c.gram().mode() == ParityMode::even ? "even" : "general";
    out["basis"] = c.labels();
    json gram = json::array();
    for (std::size_t i = 0; i < c.gram().rank(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < c.gram().rank(); ++j) {
            row.push_back(to_string(c.gram().at(i, j)));
        }
        gram.push_back(row);
    }
    out["gram"] = gram;
    out["multiplicities"] = c.multiplicities();
    out["m_primitive"] = to_string(c.m_primitive());
    out["a_ample"] = c.a_ample();
    if (c.rr()) {
        out["rr"] = {{"n", c.rr()->n}, {"coefficients", rationals(c.rr()->coeffs)}};
    }
    return out;
}

json to_json(const Certificate& cert)
{
    json out = json::array();
    for (const auto& e : cert) {
        out.push_back({{"rule", e.rule}, {"outcome", e.outcome}});
    }
    return out;
}

json to_json(const FixtureResult& f)
{
    json checks = json::array();
    for (const auto& c : f.checks) {
        checks.push_back({{"description", c.description}, {"expected", c.expected}, {"computed", c.computed},
                          {"pass", c.pass}});
    }
    json out{{"name", f.name}, {"checks", checks}, {"pass", f.all_pass()}};
    if (f.configuration) {
        out["configuration"] = to_json(*f.configuration);
    }
    return out;
}

json to_json(const SearchBounds& b)
{
    json out{{"max_components", b.max_components},
             {"entry_bound", b.entry_bound},
             {"square_min", b.square_min},
             {"max_multiplicity", b.max_multiplicity},
             {"n", b.n},
             {"parity_mode", b.parity_mode == ParityMode::even ? "even" : "general"},
             {"m_primitive", to_string(b.m_primitive)},
             {"budget", b.budget}};
    if (b.rr) {
        out["rr"] = {{"n", b.rr->n}, {"coefficients", rationals(b.rr->coeffs)}};
    }
    return out;
}

json classification_report(const Configuration& c)
{
    Certificate cert;
    const auto result = classify(c, &cert);
    json out{{"classification", to_json(result, c)}, {"certificate", to_json(cert)}, {"configuration", to_json(c)}};
    if (c.m_primitive() == Primitivity::unknown) {
        json branches = json::array();
        for (const auto& b : classify_branches(c)) {
            branches.push_back({{"m_primitive", to_string(b.primitivity)}, {"classification", to_json(b.result, c)}});
        }
        out["branches"] = branches;
    }
    return out;
}

json enumeration_summary(const EnumerationReport& report, const SearchBounds& bounds)
{
    json counterexamples = json::array();
    for (const auto& s : report.counterexamples) {
        counterexamples.push_back({{"configuration", to_json(s.configuration)},
                                   {"classification", to_json(s.classification, s.configuration)},
                                   {"certificate", to_json(s.certificate)}});
    }
    json survivors = json::array();
    for (const auto& s : report.survivors) {
        survivors.push_back({{"configuration", to_json(s.configuration)},
                             {"classification", to_json(s.classification, s.configuration)},
                             {"certificate", to_json(s.certificate)}});
    }
    return json{{"bounds", to_json(bounds)},
                {"rule_set", report.rule_set},
                {"hypothetical", report.hypothetical},
                {"candidates", report.candidates},
                {"survivor_count", report.survivor_count},
                {"chain_count", report.chain_count},
                {"prime_count", report.prime_count},
                {"rejections", report.rejections},
                {"multiplicity_deaths", report.multiplicity_deaths},
                {"multiplicity_survivors", report.multiplicity_survivors},
                {"counterexamples", counterexamples},
                {"survivors", survivors}};
}

void write_survivor_csv(std::ostream& out, const EnumerationReport& report)
{
    out << "gram,mults,class,k,d,q_last\n";
    for (const auto& s : report.survivors) {
        const auto& g = s.configuration.gram();
        for (std::size_t i = 0; i < g.entries().size(); ++i) {
            out << (i ? ";" : "") << to_string(g.entries()[i]);
        }
        out << ",";
        const auto& m = s.configuration.multiplicities();
        for (std::size_t j = 0; j < m.size(); ++j) {
            out << (j ? ";" : "") << m[j];
        }
        out << "," << class_tag(s.classification) << ",";
        if (const auto* p = std::get_if<PrimeFixed>(&s.classification)) {
            out << 0 << "," << p->qB << ",\n";
        } else {
            const auto& c = std::get<Chain>(s.classification);
            out << c.k << "," << c.d << "," << c.q_last << "\n";
        }
    }
}

std::string dump(const json& j)
{
    return j.dump(2) + "\n";
}

} // namespace hkbase
