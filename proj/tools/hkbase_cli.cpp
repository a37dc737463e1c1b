// Command-line front end. Exit codes: 0 success, 1 contradiction or failed
// check, 2 input error.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>

#include <CLI11.hpp>

#include "hkbase/errors.hpp"
#include "hkbase/io.hpp"

namespace {

using namespace hkbase;

constexpr int kOk = 0;
constexpr int kViolation = 1;
constexpr int kInputError = 2;

void write_file(const std::string& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    if (!out) {
        throw InputError("cannot write " + path);
    }
    out << content;
}

unsigned threads_from_env()
{
    const char* env = std::getenv("HK_THREADS");
    if (!env || !*env) {
        return 0;
    }
    try {
        const auto v = std::stoul(env);
        return static_cast<unsigned>(v);
    } catch (const std::exception&) {
        throw InputError(std::string("HK_THREADS must be a nonnegative integer, got '") + env + "'");
    }
}

void print_fixture(const FixtureResult& f)
{
    std::cout << f.name << "\n";
    if (f.gram) {
        std::cout << "  Gram:\n";
        for (std::size_t i = 0; i < f.gram->rank(); ++i) {
            std::cout << "    [";
            for (std::size_t j = 0; j < f.gram->rank(); ++j) {
                std::cout << (j ? ", " : "") << to_string(f.gram->at(i, j));
            }
            std::cout << "]\n";
        }
    }
    for (const auto& c : f.checks) {
        std::cout << "  " << (c.pass ? "ok   " : "FAIL ") << c.description << " = " << c.computed;
        if (!c.pass) {
            std::cout << " (expected " << c.expected << ")";
        }
        std::cout << "\n";
    }
}

int run_classify(const std::string& input, const std::string& report)
{
    const auto config = load_config_document(input);
    const auto doc = classification_report(config);
    if (report.empty() || report == "-") {
        std::cout << dump(doc);
    } else {
        write_file(report, dump(doc));
    }
    const auto cls = doc.at("classification").at("class").get<std::string>();
    std::cerr << "classification: " << cls << "\n";
    return cls == "Contradiction" ? kViolation : kOk;
}

int run_enumerate(SearchBounds bounds, const std::string& csv, const std::string& summary)
{
    bounds.threads = threads_from_env();
    EnumerationReport report;
    try {
        report = enumerate(bounds);
    } catch (const BudgetExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kInputError;
    }
    if (!csv.empty()) {
        std::ostringstream out;
        write_survivor_csv(out, report);
        write_file(csv, out.str());
    }
    if (!summary.empty()) {
        write_file(summary, dump(enumeration_summary(report, bounds)));
    }
    std::cout << "rule set:        " << report.rule_set << (report.hypothetical ? " (hypothetical: general parity)" : "")
              << "\n"
              << "candidates:      " << report.candidates << "\n"
              << "survivor_count:  " << report.survivor_count << "\n"
              << "prime_count:     " << report.prime_count << "\n"
              << "chain_count:     " << report.chain_count << "\n"
              << "counterexamples: " << report.counterexamples.size() << "\n";
    return report.counterexamples.empty() ? kOk : kViolation;
}

int run_rr(const std::string& name, int n, const std::string& coeffs, const std::vector<std::string>& points)
{
    RRPolynomial p;
    if (!coeffs.empty()) {
        p.name = "custom";
        p.n = n;
        std::stringstream in(coeffs);
        std::string token;
        while (std::getline(in, token, ',')) {
            p.coeffs.push_back(parse_rational(token));
        }
    } else {
        p = preset(name, n);
    }
    std::cout << "P(q) =";
    for (std::size_t i = 0; i < p.coeffs.size(); ++i) {
        std::cout << (i ? " + " : " ") << to_string(p.coeffs[i]) << (i ? " q^" + std::to_string(i) : "");
    }
    std::cout << "\n";
    const auto check = validate(p);
    std::cout << "valid: " << (check.valid ? "yes" : "no") << "\n";
    for (const auto& v : check.violations) {
        std::cout << "  violation: " << v << "\n";
    }
    for (const auto& q : points) {
        std::cout << "P(" << q << ") = " << to_string(eval(p, parse_rational(q))) << "\n";
    }
    return check.valid ? kOk : kViolation;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Exact toolkit for fixed divisors of big BK classes on hyperkähler manifolds"};
    app.require_subcommand(1);

    auto* classify_cmd = app.add_subcommand("classify", "classify a configuration document");
    std::string input;
    std::string report;
    classify_cmd->add_option("input", input, "configuration document (JSON)")->required();
    classify_cmd->add_option("-o,--report", report, "report path (default: stdout)");

    auto* enumerate_cmd = app.add_subcommand("enumerate", "exhaustive search over bounded configurations");
    SearchBounds bounds;
    std::string csv;
    std::string summary;
    bool even = false;
    bool general = false;
    std::string rr_preset;
    std::string primitive = "yes";
    enumerate_cmd->add_option("--max-components", bounds.max_components)->capture_default_str();
    enumerate_cmd->add_option("--entry-bound", bounds.entry_bound)->capture_default_str();
    enumerate_cmd->add_option("--square-min", bounds.square_min)->capture_default_str();
    enumerate_cmd->add_option("--max-multiplicity", bounds.max_multiplicity)->capture_default_str();
    enumerate_cmd->add_option("--n", bounds.n, "half-dimension")->capture_default_str();
    enumerate_cmd->add_option("--budget", bounds.budget, "maximum candidates examined")->capture_default_str();
    enumerate_cmd->add_option("--primitive", primitive, "mobile part primitive: yes or no")->capture_default_str();
    enumerate_cmd->add_option("--rr-preset", rr_preset, "apply Riemann-Roch integrality with preset k3 or k3n");
    auto* even_flag = enumerate_cmd->add_flag("--even", even, "even lattices (default)");
    enumerate_cmd->add_flag("--general", general, "half-integral pairings")->excludes(even_flag);
    enumerate_cmd->add_option("-o,--output", csv, "survivor CSV path");
    enumerate_cmd->add_option("--summary", summary, "JSON summary path");

    auto* example_cmd = app.add_subcommand("example", "run a worked fixture");
    std::string example_name;
    std::int64_t d = 2;
    int g = 2;
    std::int64_t qfb = 1;
    std::int64_t qlb = 1;
    int k = 1;
    std::int64_t q_last = -2;
    bool example_d_set = false;
    example_cmd->add_option("name", example_name, "mayer, beauville-mukai, hk4 or chain")->required();
    auto* d_opt = example_cmd->add_option("--d", d);
    example_cmd->add_option("--g", g);
    example_cmd->add_option("--qfb", qfb);
    example_cmd->add_option("--qlb", qlb);
    example_cmd->add_option("--k", k);
    example_cmd->add_option("--q-last", q_last);
    std::string example_json;
    example_cmd->add_option("--json", example_json, "write the fixture result as JSON");

    auto* rr_cmd = app.add_subcommand("rr", "evaluate and validate a Riemann-Roch polynomial");
    std::string rr_name = "k3n";
    int rr_n = 2;
    std::string rr_coeffs;
    std::vector<std::string> rr_points;
    rr_cmd->add_option("--preset", rr_name)->capture_default_str();
    rr_cmd->add_option("--n", rr_n)->capture_default_str();
    rr_cmd->add_option("--coeffs", rr_coeffs, "comma-separated coefficients c_0,...,c_n");
    rr_cmd->add_option("--eval", rr_points, "points q to evaluate");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kInputError;
    }

    try {
        if (*classify_cmd) {
            return run_classify(input, report);
        }
        if (*enumerate_cmd) {
            bounds.parity_mode = general ? ParityMode::general : ParityMode::even;
            if (primitive == "yes") {
                bounds.m_primitive = Primitivity::yes;
            } else if (primitive == "no") {
                bounds.m_primitive = Primitivity::no;
            } else {
                throw InputError("--primitive must be yes or no");
            }
            if (!rr_preset.empty()) {
                bounds.rr = preset(rr_preset, bounds.n);
            }
            return run_enumerate(bounds, csv, summary);
        }
        if (*example_cmd) {
            example_d_set = d_opt->count() > 0;
            FixtureResult f;
            if (example_name == "mayer") {
                f = mayer_fixture(d);
            } else if (example_name == "beauville-mukai") {
                f = beauville_mukai_fixture(g, d, qfb);
            } else if (example_name == "hk4") {
                f = hk4_fixture(qlb);
            } else if (example_name == "chain") {
                f = chain_fixture(k, example_d_set ? d : -4, q_last);
            } else {
                throw InputError("unknown example '" + example_name + "' (mayer, beauville-mukai, hk4, chain)");
            }
            print_fixture(f);
            if (!example_json.empty()) {
                write_file(example_json, dump(to_json(f)));
            }
            return f.all_pass() ? kOk : kViolation;
        }
        if (*rr_cmd) {
            return run_rr(rr_name, rr_n, rr_coeffs, rr_points);
        }
    } catch (const InputError& e) {
        std::cerr << "input error: " << e.what() << "\n";
        return kInputError;
    } catch (const PreconditionError& e) {
        std::cerr << "precondition error: " << e.what() << "\n";
        return kInputError;
    } catch (const InconsistentInput& e) {
        std::cerr << "inconsistent input: " << e.what() << "\n";
        return kInputError;
    } catch (const ArithmeticOverflow& e) {
        std::cerr << "overflow: " << e.what() << "\n";
        return kInputError;
    }
    return kInputError;
}
