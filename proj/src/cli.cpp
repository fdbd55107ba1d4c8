#include "ffpc/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <fstream>
#include <iomanip>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "ffpc/counting.hpp"

namespace ffpc {

namespace {

using Json = nlohmann::ordered_json;

constexpr const char* kSchema = "ffpc/1";
constexpr std::uint64_t kFullGridLimit = 512;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Verification whose premise does not hold for the requested field.
class Refusal : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct JobSpec {
    std::string command;
    std::string suite;
    std::string field;
    std::uint32_t p = 0;
    std::string n;
    std::optional<std::size_t> ell;
    std::string t = "all";
    std::string method = "formula";
    std::string format;
    std::optional<std::uint64_t> budget;
    bool force = false;
    std::optional<std::size_t> nmax;
    std::uint64_t max_n = 240;
    std::uint64_t seed = 0;
    std::size_t samples = 64;
    std::vector<std::uint64_t> lambdas;
    std::string lambda_vector;
    std::optional<std::uint64_t> index;
    bool twisted = false;
    std::string output;
};

Json job_json(const JobSpec& job, const FieldPtr& field, const BruteBudget& budget) {
    Json j;
    j["command"] = job.command;
    if (!job.suite.empty()) j["suite"] = job.suite;
    if (field) j["field"] = field->spec();
    if (job.p) j["p"] = job.p;
    if (!job.n.empty()) j["n"] = job.n;
    j["ell"] = job.ell ? Json(*job.ell) : Json(nullptr);
    j["t"] = job.t;
    j["method"] = job.method;
    j["format"] = job.format;
    j["budget"] = budget.limit;
    j["force"] = budget.force;
    j["nmax"] = job.nmax ? Json(*job.nmax) : Json(nullptr);
    j["maxN"] = job.max_n;
    j["seed"] = job.seed;
    j["samples"] = job.samples;
    if (!job.lambdas.empty()) j["lambda"] = job.lambdas;
    if (!job.lambda_vector.empty()) j["lambda_vector"] = job.lambda_vector;
    if (job.index) j["index"] = *job.index;
    if (job.twisted) j["twisted"] = true;
    if (!job.output.empty()) j["output"] = job.output;
    return j;
}

std::string job_line(const Json& job) { return "# job " + job.dump(); }

Json checks_json(const std::vector<Check>& checks) {
    Json a = Json::array();
    for (const auto& c : checks) a.push_back({{"name", c.name}, {"pass", c.pass}, {"detail", c.detail}});
    return a;
}

std::string fixed(double x) {
    std::ostringstream os;
    os << std::setprecision(12) << std::fixed << x;
    std::string s = os.str();
    return s == "-0.000000000000" ? "0.000000000000" : s;
}

Json roots_json(const LPolynomial& L) {
    Json a = Json::array();
    for (const auto& g : inverse_roots(L)) a.push_back({{"re", fixed(g.real())}, {"im", fixed(g.imag())}});
    return a;
}

Json coeffs_json(const std::vector<CyclotomicInt>& c) {
    Json a = Json::array();
    for (const auto& x : c) a.push_back(x.to_string());
    return a;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& text) {
    auto number = [&](const std::string& s) -> std::size_t {
        std::size_t pos = 0;
        unsigned long long v = 0;
        try {
            v = std::stoull(s, &pos);
        } catch (const std::exception&) {
            pos = std::string::npos;
        }
        if (pos != s.size() || v == 0) throw UsageError("bad n '" + text + "': expected N or A..B with N, A, B >= 1");
        return static_cast<std::size_t>(v);
    };
    const auto dots = text.find("..");
    if (dots == std::string::npos) {
        const std::size_t n = number(text);
        return {n, n};
    }
    const std::size_t a = number(text.substr(0, dots)), b = number(text.substr(dots + 2));
    if (a > b) throw UsageError("empty n range '" + text + "'");
    return {a, b};
}

std::vector<CosetClass> parse_tuples(const FieldPtr& field, std::size_t ell, const std::string& text,
                                     std::uint64_t seed) {
    if (text == "all") return class_grid(field, ell, std::numeric_limits<std::uint64_t>::max(), 0, seed);
    if (text == "default") return class_grid(field, ell, kFullGridLimit, 64, seed);
    if (text.rfind("sample:", 0) == 0) {
        const std::size_t k = std::stoul(text.substr(7));
        return class_grid(field, ell, 0, k, seed);
    }
    CosetClass t = CosetClass::parse(field, text);
    if (t.level() != ell) throw UsageError("tuple '" + text + "' has " + std::to_string(t.level()) + " entries, ell is " +
                                           std::to_string(ell));
    return {t};
}

// Characters of a level: all of them when the group is small, else `samples`
// distinct indices drawn from [1, size) with mt19937_64(seed), sorted.
std::vector<Character> character_sample(const CharacterGroupPtr& G, std::size_t samples, std::uint64_t seed) {
    std::vector<Character> out;
    if (G->size() <= kFullGridLimit) {
        for (std::uint64_t i = 0; i < G->size(); ++i) out.push_back(Character::from_index(G, i));
        return out;
    }
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<std::uint64_t> pick(1, G->size() - 1);
    std::set<std::uint64_t> chosen;
    while (chosen.size() < std::min<std::uint64_t>(samples, G->size() - 1)) chosen.insert(pick(rng));
    for (auto i : chosen) out.push_back(Character::from_index(G, i));
    return out;
}

std::string tally(std::size_t good, std::size_t total) { return std::to_string(good) + "/" + std::to_string(total); }

// ---- commands ------------------------------------------------------------------------------

struct Output {
    Json json;
    std::string csv;   // used when format is csv
    std::string text;  // used when format is text
    bool pass = true;
};

Output cmd_count(const JobSpec& job, const FieldPtr& field, const BruteBudget& budget, const Json& jj) {
    const std::size_t ell = job.ell.value_or(0);
    const auto [n0, n1] = parse_range(job.n);
    const auto tuples = parse_tuples(field, ell, job.t, job.seed);
    Method method = Method::Formula;
    if (job.method == "brute") method = Method::Brute;
    else if (job.method == "both") method = Method::Both;
    else if (job.method != "formula") throw UsageError("method must be formula, brute or both");

    CountingEngine engine(field);
    Output o;
    o.json["schema"] = kSchema;
    o.json["job"] = jj;
    o.json["seed"] = job.seed;
    Json reports = Json::array();
    std::ostringstream csv, text;
    csv << job_line(jj) << "\nfield,p,r,n,ell,t,psi,pi\n";
    for (std::size_t n = n0; n <= n1; ++n) {
        for (const auto& t : tuples) {
            const CountReport r = count(engine, job.command, n, t, method, budget);
            o.pass = o.pass && all_pass(r.checks);
            reports.push_back({{"field", r.field},
                               {"n", r.n},
                               {"ell", r.ell},
                               {"t", r.t},
                               {"quantity", r.quantity},
                               {"value", to_decimal(r.value)},
                               {"method", r.method},
                               {"checks", checks_json(r.checks)}});
            const std::string v = to_decimal(r.value);
            csv << field->short_spec() << ',' << field->p() << ',' << field->r() << ',' << n << ',' << ell << ",\""
                << r.t << "\"," << (job.command == "psi" ? v : "") << ',' << (job.command == "pi" ? v : "") << '\n';
            text << job.command << "_" << r.field << "(n=" << n << "; t=" << r.t << ") = " << v;
            for (const auto& c : r.checks) text << "  [" << (c.pass ? "pass" : "FAIL") << " " << c.name << "]";
            text << '\n';
        }
    }
    o.json["reports"] = std::move(reports);
    o.json["pass"] = o.pass;
    o.csv = csv.str();
    o.text = text.str();
    return o;
}

Output cmd_table(const JobSpec& job, const FieldPtr& field, const Json& jj) {
    const std::size_t ell = job.ell.value_or(0);
    const auto [n0, n1] = parse_range(job.n);
    const auto tuples = parse_tuples(field, ell, job.t, job.seed);
    CountingEngine engine(field);
    Output o;
    std::ostringstream csv, text;
    csv << job_line(jj) << "\nfield,p,r,n,ell,t,psi,pi\n";
    Json rows = Json::array();
    for (std::size_t n = n0; n <= n1; ++n) {
        for (const auto& t : tuples) {
            const std::string psi = to_decimal(engine.psi(n, t)), pi = to_decimal(engine.pi_mobius(n, t));
            csv << field->short_spec() << ',' << field->p() << ',' << field->r() << ',' << n << ',' << ell << ",\""
                << t.to_string() << "\"," << psi << ',' << pi << '\n';
            text << "n=" << n << " t=" << t.to_string() << " psi=" << psi << " pi=" << pi << '\n';
            rows.push_back({{"field", field->short_spec()},
                            {"p", field->p()},
                            {"r", field->r()},
                            {"n", n},
                            {"ell", ell},
                            {"t", t.to_string()},
                            {"psi", psi},
                            {"pi", pi}});
        }
    }
    o.json = {{"schema", kSchema}, {"job", jj}, {"seed", job.seed}, {"rows", rows}};
    o.csv = csv.str();
    o.text = text.str();
    return o;
}

std::vector<Check> suite_period(const JobSpec& job, const FieldPtr& field, std::vector<std::string>& notes) {
    const Field& F = *field;
    const auto P = proven_period(F);
    if (!P)
        throw Refusal("no period exists at ell = 3 for p = " + std::to_string(F.p()) +
                      ": f is not periodic (only p = 2 and p = 5 have one); see 'ffpc witness --p " +
                      std::to_string(F.p()) + " --ell 3' for the certificate");
    if (job.ell && *job.ell != 3) throw UsageError("period verification runs at ell = 3");
    const std::size_t nmax = job.nmax.value_or(F.p() == 2 ? 30 : 70);
    CountingEngine engine(field);
    const auto tuples = parse_tuples(field, 3, job.t == "all" ? "default" : job.t, job.seed);
    auto checks = verify_periodicity(engine, tuples, *P, nmax);
    std::size_t good = 0;
    for (const auto& t : tuples) good += engine.psi(*P, t) == closed_form_period(F, t, *P);
    checks.push_back({"closed form at n=" + std::to_string(*P), good == tuples.size(), tally(good, tuples.size())});
    if (F.p() == 5)
        notes.push_back("psi(60, t) over F_5 is checked formula against closed form only; brute force over 5^60 "
                        "polynomials is infeasible");
    return checks;
}

std::vector<Check> suite_symmetry(const JobSpec& job, const FieldPtr& field, std::vector<std::string>& notes) {
    const Field& F = *field;
    std::vector<std::uint64_t> lambdas = job.lambdas;
    if (lambdas.empty()) {
        if (F.p() == 2) lambdas = {5, 7, 11};
        else if (F.p() == 5) lambdas = {7, 11, 13};
        else throw UsageError("--lambda is required for p other than 2 and 5");
    }
    const std::size_t ell = job.ell.value_or(3);
    const std::size_t nmax = job.nmax.value_or(6);
    CountingEngine engine(field);
    const auto tuples = parse_tuples(field, ell, job.t == "all" ? "default" : job.t, job.seed);
    std::vector<Check> checks;
    for (auto lambda : lambdas) {
        for (auto& c : verify_symmetry(engine, tuples, lambda, nmax, job.twisted)) checks.push_back(std::move(c));
        if (F.p() == 5 && ell == 3 && lambda % 3 != 0) {
            std::size_t good = 0;
            for (const auto& t : tuples)
                good += printed_sym_tuple(t, lambda) == group_pow(t, static_cast<std::int64_t>(lambda));
            checks.push_back({"printed tuple equals group_pow lambda=" + std::to_string(lambda), good == tuples.size(),
                              tally(good, tuples.size())});
        }
        if (!job.twisted && galois_sign_sqrt_q(F, lambda) == -1)
            notes.push_back("lambda=" + std::to_string(lambda) +
                            " moves sqrt(q) to -sqrt(q); the untwisted identity is expected to fail at odd n "
                            "(rerun with --twisted for the signed form)");
    }
    return checks;
}

std::vector<Check> suite_roots(const JobSpec& job, const FieldPtr& field, std::uint64_t N) {
    const Field& F = *field;
    const std::uint32_t want = N == 24 ? 2 : 5;
    if (F.p() != want)
        throw Refusal("roots" + std::to_string(N) + " needs characteristic " + std::to_string(want));
    auto G = CharacterGroup::make(field, 3);
    std::size_t good = 0, total = 0, agree = 0;
    for (const auto& chi : character_sample(G, job.samples, job.seed)) {
        if (chi.is_trivial() || (N == 24 && !chi.is_primitive())) continue;
        ++total;
        const LPolynomial L = l_polynomial(chi);
        const bool exact = unity_order_dividing(L, N);
        good += exact;
        agree += exact == (numeric_unity_deviation(L, N) <= 1e-6);
    }
    const std::string tag = " q=" + std::to_string(F.q());
    return {{"s_{N+j} = q^{N/2} s_j, N=" + std::to_string(N) + tag, good == total && total > 0, tally(good, total)},
            {"exact and numeric unity tests agree" + tag, agree == total, tally(agree, total)}};
}

std::vector<Check> suite_fomenko(const FieldPtr& field) {
    if (field->p() != 2) throw Refusal("fomenko needs characteristic 2");
    auto G = CharacterGroup::make(field, 3);
    std::size_t good = 0, total = 0;
    for (const auto& chi : enumerate_characters(G)) {
        if (!chi.is_primitive()) continue;
        ++total;
        good += verify_fomenko(chi).ok();
    }
    return {{"fomenko alpha^2 and beta q=" + std::to_string(field->q()), good == total, tally(good, total)}};
}

std::vector<Check> suite_cubicform(const FieldPtr& field) {
    if (field->p() < 5) throw Refusal("cubicform needs characteristic at least 5");
    auto G = CharacterGroup::make(field, 3);
    std::size_t good = 0, total = 0;
    for (const auto& chi : enumerate_characters(G)) {
        if (!chi.is_primitive()) continue;
        ++total;
        good += verify_cubic_normal_form(chi).ok;
    }
    return {{"cubic normal form q=" + std::to_string(field->q()), good == total, tally(good, total)}};
}

std::vector<Check> suite_legendre(const FieldPtr& field) {
    const Field& F = *field;
    if (F.r() != 1 || F.p() < 5) throw Refusal("legendre needs a prime field F_p with p >= 5");
    static const char* kPairs[] = {"(1,1)", "(1,-1)", "(-1,1)", "(-1,-1)"};
    std::vector<Check> out;
    for (std::uint32_t j = 1; j < F.p(); ++j) {
        const auto found = legendre_pair_exists(F.p(), j);
        std::string missing;
        for (int k = 0; k < 4; ++k)
            if (!found[k]) missing += std::string(missing.empty() ? "" : " ") + kPairs[k];
        out.push_back({"all sign pairs p=" + std::to_string(F.p()) + " j=" + std::to_string(j), missing.empty(),
                       missing.empty() ? "" : "missing " + missing});
    }
    return out;
}

std::vector<Check> suite_zeta(const JobSpec& job, const FieldPtr& field, const BruteBudget& budget) {
    CountingEngine engine(field);
    const std::size_t top = job.ell.value_or(3), nmax = job.nmax.value_or(field->p() == 2 ? 10 : 4);
    std::vector<Check> out;
    for (std::size_t ell = 1; ell <= top; ++ell)
        for (auto& c : genus_and_zeta_consistency(engine, ell, nmax, budget)) out.push_back(std::move(c));
    return out;
}

Output cmd_verify(const JobSpec& job, const FieldPtr& field, const BruteBudget& budget, const Json& jj) {
    std::vector<std::string> notes;
    std::vector<Check> checks;
    const std::string& s = job.suite;
    if (s == "period") checks = suite_period(job, field, notes);
    else if (s == "symmetry") checks = suite_symmetry(job, field, notes);
    else if (s == "sym2") checks = verify_sym2(field);
    else if (s == "roots24") checks = suite_roots(job, field, 24);
    else if (s == "roots60") checks = suite_roots(job, field, 60);
    else if (s == "fomenko") checks = suite_fomenko(field);
    else if (s == "cubicform") checks = suite_cubicform(field);
    else if (s == "legendre") checks = suite_legendre(field);
    else if (s == "zeta") checks = suite_zeta(job, field, budget);
    else throw UsageError("unknown suite '" + s + "'");

    Output o;
    o.pass = all_pass(checks);
    o.json = {{"schema", kSchema}, {"job", jj}, {"seed", job.seed}, {"suite", s}, {"checks", checks_json(checks)}};
    if (!notes.empty()) o.json["notes"] = notes;
    o.json["pass"] = o.pass;
    std::ostringstream text, csv;
    for (const auto& c : checks) text << (c.pass ? "PASS " : "FAIL ") << c.name << (c.detail.empty() ? "" : "  " + c.detail) << '\n';
    for (const auto& n : notes) text << "note: " << n << '\n';
    text << (o.pass ? "verdict: pass\n" : "verdict: FAIL\n");
    csv << job_line(jj) << "\nname,pass,detail\n";
    for (const auto& c : checks) csv << '"' << c.name << "\"," << (c.pass ? 1 : 0) << ",\"" << c.detail << "\"\n";
    o.text = text.str();
    o.csv = csv.str();
    return o;
}

Output cmd_witness(const JobSpec& job, const Json& jj) {
    if (!job.p || !job.ell) throw UsageError("witness needs --p and --ell");
    std::optional<Witness> found;
    try {
        found = witness_nonperiodicity(job.p, *job.ell, job.max_n);
    } catch (const std::domain_error& e) {
        throw Refusal(std::string(e.what()) + " (use 'ffpc verify period' instead)");
    }
    const Witness& w = *found;
    std::vector<Check> checks;
    if (w.expected) checks.push_back({"coefficients match the closed display", w.coefficients_match, ""});
    checks.push_back({"no even N <= " + std::to_string(w.max_n) + " with s_{N+j} = q^{N/2} s_j", !w.unity_order,
                      w.unity_order ? "order " + std::to_string(*w.unity_order) : ""});
    Output o;
    o.pass = all_pass(checks);
    o.json = {{"schema", kSchema},
              {"job", jj},
              {"seed", job.seed},
              {"p", job.p},
              {"ell", *job.ell},
              {"character", w.chi.index()},
              {"L", w.L.to_string()},
              {"coefficients", coeffs_json(w.L.coeffs)},
              {"expected", w.expected ? coeffs_json(*w.expected) : Json(nullptr)},
              {"rh_numeric", w.rh_numeric},
              {"rh_deviation", fixed(rh_deviation(w.L))},
              {"roots", roots_json(w.L)},
              {"unity_order", w.unity_order ? Json(*w.unity_order) : Json(nullptr)},
              {"checks", checks_json(checks)},
              {"pass", o.pass}};
    std::ostringstream text;
    text << "witness p=" << job.p << " ell=" << *job.ell << " chi#" << w.chi.index() << "\nL = " << w.L.to_string()
         << "\nrh_numeric: " << (w.rh_numeric ? "all |gamma| = sqrt(q)" : "violated") << "\nunity order <= "
         << w.max_n << ": " << (w.unity_order ? std::to_string(*w.unity_order) : "none") << '\n';
    for (const auto& c : checks) text << (c.pass ? "PASS " : "FAIL ") << c.name << '\n';
    o.text = text.str();
    o.csv = job_line(jj) + "\n" + text.str();
    return o;
}

Output cmd_lfunc(const JobSpec& job, const FieldPtr& field, const Json& jj) {
    const std::size_t ell = job.ell.value_or(3);
    auto G = CharacterGroup::make(field, ell);
    std::optional<Character> chi;
    if (!job.lambda_vector.empty()) {
        if (job.index) throw UsageError("give either --index or --lambda-vector");
        if (field->p() <= ell) throw UsageError("lambda vectors need p > ell");
        const CosetClass v = CosetClass::parse(field, job.lambda_vector);
        if (v.level() != ell) throw UsageError("lambda vector needs " + std::to_string(ell) + " entries");
        chi = Character::from_lambdas(G, v.a);
    } else {
        const std::uint64_t i = job.index.value_or(0);
        if (i >= G->size()) throw UsageError("character index " + std::to_string(i) + " out of range [0, " +
                                             std::to_string(G->size()) + ")");
        chi = Character::from_index(G, i);
    }
    const LPolynomial L = l_polynomial(*chi);
    Output o;
    Json j{{"schema", kSchema}, {"job", jj}, {"seed", job.seed}, {"character", chi->index()},
           {"level_of", chi->level_of()}, {"primitive", chi->is_primitive()}, {"L", L.to_string()}};
    std::ostringstream text;
    text << "chi#" << chi->index() << " over " << field->short_spec() << " mod R_" << ell << "\nL = " << L.to_string()
         << '\n';
    if (field->p() > ell) {
        const auto lam = character_lambdas(*chi);
        j["lambda"] = lam;
    }
    if (field->p() == 2 && ell == 3) {
        const auto [lambda, mu] = fomenko_epsilon(*chi);
        j["epsilon"] = {lambda, mu};
        text << "epsilon = (" << lambda << ", " << mu << ")\n";
    }
    if (L.trivial) {
        j["degree"] = nullptr;
    } else {
        j["degree"] = L.degree();
        j["coefficients"] = coeffs_json(L.coeffs);
        j["roots"] = roots_json(L);
        j["rh_deviation"] = fixed(rh_deviation(L));
        const auto m = minimal_unity_order(L, job.max_n);
        j["unity_order"] = m ? Json(*m) : Json(nullptr);
        text << "degree " << L.degree() << "\nunity order <= " << job.max_n << ": "
             << (m ? std::to_string(*m) : "none") << '\n';
        for (const auto& g : inverse_roots(L))
            text << "gamma = " << fixed(g.real()) << (g.imag() < 0 ? " - " : " + ") << fixed(std::abs(g.imag())) << "i\n";
    }
    o.json = std::move(j);
    o.text = text.str();
    o.csv = job_line(jj) + "\n" + text.str();
    return o;
}

void add_common(CLI::App* sub, JobSpec& job, bool needs_field) {
    auto* f = sub->add_option("--field", job.field, "field as p^r, q or p^r:m");
    if (needs_field) f->required();
    sub->add_option("--format", job.format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
    sub->add_option("--budget", job.budget, "brute-force limit on q^n (default FFPC_BUDGET or 2^26)");
    sub->add_flag("--force", job.force, "run brute force past the budget");
    sub->add_option("--seed", job.seed, "sampling seed");
    sub->add_option("--output,-o", job.output, "write the report to this file");
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    JobSpec job;
    CLI::App app{"Exact counts of prime polynomials in short intervals over finite fields", "ffpc"};
    app.require_subcommand(1);

    for (const char* name : {"psi", "pi"}) {
        auto* s = app.add_subcommand(name, std::string("count ") + name);
        add_common(s, job, true);
        s->add_option("--n", job.n, "degree N or range A..B")->required();
        s->add_option("--ell", job.ell, "number of prescribed coefficients");
        s->add_option("--t", job.t, "tuple a1,...,a_ell (encodings), all, or sample:k");
        s->add_option("--method", job.method, "formula, brute or both")->check(CLI::IsMember({"formula", "brute", "both"}));
    }
    auto* table = app.add_subcommand("table", "psi and pi over a range of n and tuples");
    add_common(table, job, true);
    table->add_option("--n", job.n, "degree N or range A..B")->required();
    table->add_option("--ell", job.ell, "number of prescribed coefficients");
    table->add_option("--t", job.t, "tuple, all, or sample:k");

    auto* verify = app.add_subcommand("verify", "run a verification suite");
    add_common(verify, job, true);
    verify->add_option("suite", job.suite, "period, symmetry, sym2, roots24, roots60, fomenko, cubicform, legendre, zeta")
        ->required()
        ->check(CLI::IsMember({"period", "symmetry", "sym2", "roots24", "roots60", "fomenko", "cubicform", "legendre", "zeta"}));
    verify->add_option("--ell", job.ell, "level (symmetry) or top level (zeta)");
    verify->add_option("--t", job.t, "tuple, all, or sample:k (default: all when q^3 <= 512, else sample:64)");
    verify->add_option("--nmax", job.nmax, "largest n tested");
    verify->add_option("--lambda", job.lambdas, "symmetry exponents")->delimiter(',');
    verify->add_flag("--twisted", job.twisted, "symmetry with the Galois sign of sqrt(q)");
    verify->add_option("--samples", job.samples, "character sample size for large groups");

    auto* witness = app.add_subcommand("witness", "non-periodicity witness character");
    add_common(witness, job, false);
    witness->add_option("--p", job.p, "characteristic")->required();
    witness->add_option("--ell", job.ell, "level")->required();
    witness->add_option("--maxN", job.max_n, "largest even N in the unity-order sweep");

    auto* lfunc = app.add_subcommand("lfunc", "L-polynomial of one character");
    add_common(lfunc, job, true);
    lfunc->add_option("--ell", job.ell, "level (default 3)");
    lfunc->add_option("--index", job.index, "character index in enumeration order");
    lfunc->add_option("--lambda-vector", job.lambda_vector, "lambda_1,...,lambda_ell (p > ell)");
    lfunc->add_option("--maxN", job.max_n, "largest even N in the unity-order search");

    std::vector<std::string> reversed(args.rbegin(), args.rend());
    try {
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kExitPass;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kExitPass;
    } catch (const CLI::ParseError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    }
    job.command = app.get_subcommands().front()->get_name();
    if (job.max_n % 2 != 0) {
        err << "usage error: --maxN must be even\n";
        return kExitUsage;
    }
    if (job.format.empty()) job.format = job.command == "table" ? "csv" : "json";

    try {
        BruteBudget budget = BruteBudget::from_env();
        if (job.budget) budget.limit = *job.budget;
        budget.force = job.force;
        FieldPtr field;
        if (!job.field.empty()) {
            try {
                field = Field::parse(job.field);
            } catch (const std::invalid_argument& e) {
                throw UsageError(std::string("bad field: ") + e.what());
            }
        }
        const Json jj = job_json(job, field, budget);
        Output o;
        if (job.command == "psi" || job.command == "pi") o = cmd_count(job, field, budget, jj);
        else if (job.command == "table") o = cmd_table(job, field, jj);
        else if (job.command == "verify") o = cmd_verify(job, field, budget, jj);
        else if (job.command == "witness") o = cmd_witness(job, jj);
        else o = cmd_lfunc(job, field, jj);

        const std::string body = job.format == "json" ? o.json.dump(2) + "\n"
                                 : job.format == "csv" ? o.csv
                                                       : o.text;
        if (job.output.empty()) {
            out << body;
        } else {
            std::ofstream file(job.output, std::ios::binary);
            if (!file) throw UsageError("cannot write " + job.output);
            file << body;
        }
        return o.pass ? kExitPass : kExitFail;
    } catch (const BudgetExceeded& e) {
        err << "budget refusal: " << e.what() << "\n";
        return kExitBudget;
    } catch (const Refusal& e) {
        err << "refused: " << e.what() << '\n';
        return kExitUsage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::out_of_range& e) {
        err << "usage error: " << e.what() << '\n';
        return kExitUsage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kExitFail;
    }
}

}  // namespace ffpc
