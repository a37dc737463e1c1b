#include "hkbase/enumerator.hpp"

#include <algorithm>
#include <atomic>
#include <exception>
#include <mutex>
#include <numeric>
#include <thread>
#include <utility>

#include "hkbase/errors.hpp"

namespace hkbase {

void validate_bounds(const SearchBounds& b)
{
    if (b.max_components < 0) {
        throw InputError("max_components must be nonnegative");
    }
    if (b.entry_bound < 1) {
        throw InputError("entry_bound must be positive");
    }
    if (b.square_min >= 0) {
        throw InputError("square_min must be negative");
    }
    if (b.parity_mode == ParityMode::even && b.square_min % 2 != 0) {
        throw InputError("square_min must be even in even mode");
    }
    if (b.max_multiplicity < 1) {
        throw InputError("max_multiplicity must be positive");
    }
    if (b.n < 1) {
        throw InputError("n must be positive");
    }
    if (b.m_primitive == Primitivity::unknown) {
        throw InputError("enumeration needs a definite primitivity hypothesis");
    }
    if (b.rr && b.rr->n != b.n) {
        throw InputError("Riemann-Roch polynomial does not match n");
    }
}

std::optional<Violation> first_filter_violation(const Configuration& c)
{
    if (auto v = check_setup(c)) {
        return v;
    }
    if (auto v = rule_notprimitive(c)) {
        return v;
    }
    std::optional<Violation> bad;
    for_each_sub_multiplicity(c.multiplicities(), [&](const std::vector<std::int64_t>& sub) {
        if (bad) {
            return;
        }
        if ((bad = rule_lemma1(c, sub))) {
            return;
        }
        if ((bad = rule_lemma2(c, sub))) {
            return;
        }
        bad = rule_fixed_positive(c, sub);
    });
    if (bad) {
        return bad;
    }
    const auto count = c.component_count();
    for (std::size_t i = 0; i < count; ++i) {
        for (std::size_t j = 0; j < count; ++j) {
            if (i != j) {
                if (auto v = rule_technical(c, i, j)) {
                    return v;
                }
            }
        }
    }
    for (std::size_t j = 0; j < count; ++j) {
        if (c.gram().at(0, j + 1) > 0) {
            auto outcome = rule_key(c, j);
            if (auto* v = std::get_if<Violation>(&outcome)) {
                return *v;
            }
        }
    }
    if (c.rr()) {
        try {
            (void)h0_big_bk(*c.rr(), c.sq(c.ample()));
        } catch (const InconsistentInput& e) {
            return Violation{"rr-h0", e.what(), {}};
        }
    }
    return rule_ample(c);
}

std::optional<ClassificationResult> match_two_case_shape(const Configuration& c)
{
    const auto count = c.component_count();
    const auto& mults = c.multiplicities();
    if (std::any_of(mults.begin(), mults.end(), [](auto b) { return b != 1; })) {
        return std::nullopt;
    }
    if (count == 1) {
        const auto qb = c.component_square(0);
        if (qb <= 0 && c.sq(c.mobile()) == 0 && c.pair(c.mobile(), c.component(0)) > 0) {
            return PrimeFixed{qb.numerator()};
        }
        return std::nullopt;
    }
    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), 0);
    do {
        const auto d = c.component_square(perm.front());
        const auto q_last = c.component_square(perm.back());
        if (!is_integer(d) || !is_integer(q_last)) {
            continue;
        }
        GramLattice expected;
        try {
            expected = chain_gram(static_cast<int>(count) - 1, d.numerator(), q_last.numerator(), c.gram().mode());
        } catch (const InputError&) {
            continue;
        }
        std::vector<std::vector<std::int64_t>> basis{c.mobile()};
        for (auto j : perm) {
            basis.push_back(c.component(j));
        }
        if (c.gram().transformed(basis) == expected) {
            return Chain{static_cast<int>(count) - 1, d.numerator(), q_last.numerator(), perm};
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return std::nullopt;
}

std::vector<Rational> canonical_key(const Configuration& c)
{
    std::vector<Rational> key;
    key.emplace_back(static_cast<std::int64_t>(c.gram().rank()));
    key.insert(key.end(), c.gram().entries().begin(), c.gram().entries().end());
    for (auto b : c.multiplicities()) {
        key.emplace_back(b);
    }
    return key;
}

Configuration canonical_form(const Configuration& c)
{
    const auto count = c.component_count();
    std::vector<std::size_t> perm(count);
    std::iota(perm.begin(), perm.end(), 0);
    std::optional<Configuration> best;
    std::vector<Rational> best_key;
    do {
        std::vector<std::vector<std::int64_t>> basis{c.mobile()};
        std::vector<std::int64_t> mults;
        std::vector<std::string> labels{c.labels()[0]};
        for (auto j : perm) {
            basis.push_back(c.component(j));
            mults.push_back(c.multiplicities()[j]);
            labels.push_back(c.labels()[j + 1]);
        }
        Configuration candidate(c.n(), c.gram().transformed(basis), mults, c.m_primitive(), c.a_ample(), c.rr(),
                                labels);
        auto key = canonical_key(candidate);
        if (!best || key < best_key) {
            best = std::move(candidate);
            best_key = std::move(key);
        }
    } while (std::next_permutation(perm.begin(), perm.end()));
    return *best;
}

namespace {

// Gram entries are held in half units (twice the pairing value) while searching.
struct Search {
    const SearchBounds& bounds;
    int m;                       // number of components
    std::size_t rank;
    std::int64_t offdiag_step;   // in half units
    std::int64_t diag_step;
    std::vector<std::int64_t> g; // rank x rank, half units
    std::vector<std::int64_t> mults;

    EnumerationReport local;
    std::atomic<std::uint64_t>& examined;
    std::atomic<bool>& over_budget;

    Search(const SearchBounds& b, int components, std::atomic<std::uint64_t>& counter, std::atomic<bool>& flag)
        : bounds(b), m(components), rank(static_cast<std::size_t>(components) + 1),
          offdiag_step(b.parity_mode == ParityMode::even ? 2 : 1),
          diag_step(b.parity_mode == ParityMode::even ? 4 : 2), g(rank * rank, 0),
          mults(static_cast<std::size_t>(components), 1), examined(counter), over_budget(flag)
    {
    }

    std::int64_t& at(std::size_t i, std::size_t j) { return g[i * rank + j]; }
    void set(std::size_t i, std::size_t j, std::int64_t v)
    {
        g[i * rank + j] = v;
        g[j * rank + i] = v;
    }

    // Markman: for a negative component E (square h/2), -q(E) divides 2q(E,x) = t.
    bool divisible(std::int64_t square_half, std::int64_t t) const
    {
        if (square_half >= 0) {
            return true;
        }
        const std::int64_t modulus = -square_half / 2;
        return square_half % 2 == 0 ? t % modulus == 0 : (2 * t) % (-square_half) == 0;
    }

    std::vector<std::int64_t> diag_values(bool mobile) const
    {
        std::vector<std::int64_t> out;
        const std::int64_t lo = mobile ? -2 * bounds.entry_bound : 2 * bounds.square_min;
        const std::int64_t hi = 2 * bounds.entry_bound;
        for (std::int64_t v = lo - (((lo % diag_step) + diag_step) % diag_step); v <= hi; v += diag_step) {
            if (v < lo) {
                continue;
            }
            if (bounds.prune) {
                // q(M) > 0 violates lemma1, q(M) < 0 leaves the positive cone.
                if (mobile && v != 0) {
                    continue;
                }
                // Positive components are big BK classes with h0 = 1; isotropic ones
                // violate lemma2 (or notprimitive) beside other components.
                if (!mobile && (v > 0 || (v == 0 && m > 1))) {
                    continue;
                }
            }
            out.push_back(v);
        }
        return out;
    }

    std::vector<std::int64_t> offdiag_values() const
    {
        std::vector<std::int64_t> out;
        // Effective classes without common components pair nonnegatively.
        const std::int64_t lo = bounds.prune ? 0 : -2 * bounds.entry_bound;
        for (std::int64_t v = lo; v <= 2 * bounds.entry_bound; v += offdiag_step) {
            out.push_back(v);
        }
        return out;
    }

    bool is_canonical()
    {
        std::vector<std::size_t> perm(static_cast<std::size_t>(m));
        std::iota(perm.begin(), perm.end(), 0);
        while (std::next_permutation(perm.begin(), perm.end())) {
            // Compare permuted (gram, mults) against identity lexicographically.
            int cmp = 0;
            auto idx = [&](std::size_t i) { return i == 0 ? 0 : perm[i - 1] + 1; };
            for (std::size_t i = 0; i < rank && cmp == 0; ++i) {
                for (std::size_t j = 0; j < rank && cmp == 0; ++j) {
                    const auto a = g[idx(i) * rank + idx(j)];
                    const auto b = g[i * rank + j];
                    cmp = a < b ? -1 : (a > b ? 1 : 0);
                }
            }
            for (std::size_t j = 0; j < mults.size() && cmp == 0; ++j) {
                const auto a = mults[perm[j]];
                const auto b = mults[j];
                cmp = a < b ? -1 : (a > b ? 1 : 0);
            }
            if (cmp < 0) {
                return false;
            }
        }
        return true;
    }

    Configuration build() const
    {
        std::vector<Rational> entries;
        entries.reserve(g.size());
        for (auto v : g) {
            entries.emplace_back(v, 2);
        }
        return Configuration(bounds.n, GramLattice(rank, std::move(entries), bounds.parity_mode), mults,
                             bounds.m_primitive, false, bounds.rr);
    }

    void reject(const std::string& rule) { ++local.rejections[rule]; }

    void leaf()
    {
        if (!is_canonical()) {
            return;
        }
        if (++examined > bounds.budget) {
            over_budget = true;
            return;
        }
        ++local.candidates;
        const bool multiple = std::any_of(mults.begin(), mults.end(), [](auto b) { return b > 1; });
        const auto config = build();
        const auto setup = check_setup(config);
        if (setup) {
            reject(setup->rule);
            if (multiple) {
                ++local.multiplicity_deaths[setup->rule];
            }
            return;
        }
        if (auto v = first_filter_violation(config)) {
            reject(v->rule);
            if (multiple) {
                const auto verdict = classify(config);
                const auto* c = std::get_if<Contradiction>(&verdict);
                ++local.multiplicity_deaths[c ? c->violation.rule : "classify-accepted"];
            }
            return;
        }
        if (multiple) {
            ++local.multiplicity_survivors;
        }
        SurvivorRecord record{config, PrimeFixed{}, {}};
        record.classification = classify(config, &record.certificate);
        const auto shape = match_two_case_shape(config);
        ++local.survivor_count;
        const bool agrees = shape && !is_contradiction(record.classification)
                            && class_tag(*shape) == class_tag(record.classification) && *shape == record.classification;
        if (!agrees) {
            if (!shape) {
                record.certificate.push_back({"shape", "fail: Gram is neither a reduced prime nor a chain"});
            } else {
                record.certificate.push_back({"shape", "fail: classify disagrees with the " + class_tag(*shape) + " shape"});
            }
            local.counterexamples.push_back(std::move(record));
            return;
        }
        if (std::holds_alternative<Chain>(record.classification)) {
            ++local.chain_count;
        } else {
            ++local.prime_count;
        }
        local.survivors.push_back(std::move(record));
    }

    void multiplicities(std::size_t j)
    {
        if (over_budget) {
            return;
        }
        if (j == mults.size()) {
            leaf();
            return;
        }
        for (std::int64_t b = 1; b <= bounds.max_multiplicity; ++b) {
            mults[j] = b;
            multiplicities(j + 1);
        }
    }

    // Pairs (i, j) of components, i < j, in row-major order.
    void pairs(std::size_t index, const std::vector<std::pair<std::size_t, std::size_t>>& slots,
               const std::vector<std::int64_t>& values)
    {
        if (over_budget) {
            return;
        }
        if (index == slots.size()) {
            multiplicities(0);
            return;
        }
        const auto [i, j] = slots[index];
        for (auto v : values) {
            if (bounds.prune && (!divisible(at(i, i), v) || !divisible(at(j, j), v))) {
                continue;
            }
            set(i, j, v);
            pairs(index + 1, slots, values);
        }
    }

    void squares(std::size_t j, const std::vector<std::int64_t>& values)
    {
        if (j == rank) {
            std::vector<std::pair<std::size_t, std::size_t>> slots;
            for (std::size_t a = 1; a < rank; ++a) {
                for (std::size_t b = a + 1; b < rank; ++b) {
                    slots.emplace_back(a, b);
                }
            }
            pairs(0, slots, offdiag_values());
            return;
        }
        for (auto v : values) {
            if (bounds.prune && !divisible(v, at(0, j))) {
                continue;
            }
            set(j, j, v);
            squares(j + 1, values);
        }
    }

    /// Runs every candidate whose first Gram row is `row` (half units).
    void run_partition(const std::vector<std::int64_t>& row)
    {
        for (std::size_t j = 0; j < rank; ++j) {
            set(0, j, row[j]);
        }
        squares(1, diag_values(false));
    }
};

// First Gram rows (q(M), q(M,B_1), ..., q(M,B_m)) with nondecreasing pairings,
// the order a canonical form has.
std::vector<std::vector<std::int64_t>> first_rows(const SearchBounds& b, int m)
{
    std::atomic<std::uint64_t> dummy{0};
    std::atomic<bool> flag{false};
    Search probe(b, m, dummy, flag);
    const auto mobile = probe.diag_values(true);
    const auto pairs = probe.offdiag_values();
    std::vector<std::vector<std::int64_t>> rows;
    std::vector<std::int64_t> row(static_cast<std::size_t>(m) + 1);
    auto rec = [&](auto&& self, std::size_t j) -> void {
        if (j == row.size()) {
            rows.push_back(row);
            return;
        }
        for (auto v : pairs) {
            if (j > 1 && v < row[j - 1]) {
                continue;
            }
            row[j] = v;
            self(self, j + 1);
        }
    };
    for (auto q : mobile) {
        row[0] = q;
        rec(rec, 1);
    }
    return rows;
}

void merge(EnumerationReport& into, EnumerationReport&& part)
{
    for (auto& s : part.survivors) {
        into.survivors.push_back(std::move(s));
    }
    for (auto& s : part.counterexamples) {
        into.counterexamples.push_back(std::move(s));
    }
    into.survivor_count += part.survivor_count;
    into.chain_count += part.chain_count;
    into.prime_count += part.prime_count;
    into.candidates += part.candidates;
    into.multiplicity_survivors += part.multiplicity_survivors;
    for (auto& [k, v] : part.rejections) {
        into.rejections[k] += v;
    }
    for (auto& [k, v] : part.multiplicity_deaths) {
        into.multiplicity_deaths[k] += v;
    }
}

void sort_records(std::vector<SurvivorRecord>& records)
{
    std::sort(records.begin(), records.end(), [](const SurvivorRecord& a, const SurvivorRecord& b) {
        return canonical_key(a.configuration) < canonical_key(b.configuration);
    });
}

} // namespace

EnumerationReport enumerate(const SearchBounds& bounds)
{
    validate_bounds(bounds);
    EnumerationReport report;
    report.rule_set = bounds.rr ? "lemmas+rr" : "lemmas";
    report.hypothetical = bounds.parity_mode == ParityMode::general;

    struct Task {
        int m;
        std::vector<std::int64_t> row;
    };
    std::vector<Task> tasks;
    for (int m = 1; m <= bounds.max_components; ++m) {
        for (auto& row : first_rows(bounds, m)) {
            tasks.push_back({m, std::move(row)});
        }
    }

    unsigned workers = bounds.threads ? bounds.threads : std::max(1u, std::thread::hardware_concurrency());
    workers = std::min<unsigned>(workers, std::max<std::size_t>(tasks.size(), 1));

    std::atomic<std::size_t> next{0};
    std::atomic<std::uint64_t> examined{0};
    std::atomic<bool> over_budget{false};
    std::vector<EnumerationReport> parts(workers);
    std::vector<std::exception_ptr> errors(workers);

    auto work = [&](unsigned w) {
        try {
            for (auto t = next++; t < tasks.size() && !over_budget; t = next++) {
                Search search(bounds, tasks[t].m, examined, over_budget);
                search.run_partition(tasks[t].row);
                merge(parts[w], std::move(search.local));
            }
        } catch (...) {
            errors[w] = std::current_exception();
        }
    };
    if (workers <= 1) {
        work(0);
    } else {
        std::vector<std::thread> pool;
        for (unsigned w = 0; w < workers; ++w) {
            pool.emplace_back(work, w);
        }
        for (auto& t : pool) {
            t.join();
        }
    }
    for (auto& e : errors) {
        if (e) {
            std::rethrow_exception(e);
        }
    }
    if (over_budget) {
        throw BudgetExceeded("search exceeded the budget of " + std::to_string(bounds.budget) + " candidates");
    }
    for (auto& p : parts) {
        merge(report, std::move(p));
    }
    sort_records(report.survivors);
    sort_records(report.counterexamples);
    return report;
}

VerificationSummary verify_classification(const SearchBounds& bounds)
{
    auto report = enumerate(bounds);
    return {report.survivor_count, report.chain_count, report.prime_count, std::move(report.counterexamples)};
}

} // namespace hkbase
