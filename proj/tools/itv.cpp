#include "itv/form_literal.hpp"
#include "itv/verify.hpp"

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

using namespace itv;

namespace {

enum Exit { kOk = 0, kVerifyFailed = 1, kUsage = 2, kMath = 3 };

struct Options {
    std::string form;
    std::string family = "generic";
    int samples = 500;
    std::uint64_t seed = kDefaultSeed;
    double tol = kDefaultClassTol;
    unsigned threads = 0;
    std::string out;
    bool json = false;
    std::string algebra;
};

StructureTable<Rational> load_algebra(const Options& o) {
    return o.algebra.empty() ? iwasawa_table<Rational>() : load_structure_table(o.algebra);
}

std::string algebra_source(const Options& o) { return o.algebra.empty() ? "iwasawa preset" : o.algebra; }

unsigned resolved_threads(const Options& o) {
    return o.threads ? o.threads : std::max(1U, std::thread::hardware_concurrency());
}

Json config_json(const Options& o) {
    return {{"algebra", algebra_source(o)}, {"tol", o.tol}, {"seed", o.seed}, {"samples", o.samples},
            {"threads", resolved_threads(o)}};
}

void emit(const Options& o, const std::string& text) {
    if (o.out.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream file(o.out);
    if (!file) throw ParseError("cannot write " + o.out);
    file << text;
}

int cmd_classify(const Options& o) {
    const auto s = load_algebra(o);
    const auto c = levi_civita(s).cast<double>();
    const auto p = from_plucker(parse_form<double>(o.form));
    Json j = classify_json(p, c, s.cast<double>(), o.tol);
    j["form"] = o.form;
    j["config"] = config_json(o);
    emit(o, canonical_dump(j) + "\n");
    return kOk;
}

FamilySpec family_spec(const Options& o) {
    FamilySpec f = family_from_name(o.family);
    f.count = o.samples;
    f.seed = o.seed;
    return f;
}

int cmd_sweep(const Options& o) {
    const auto c = levi_civita(load_algebra(o)).cast<double>();
    const auto r = sweep(family_spec(o), c, o.tol, resolved_threads(o));
    Json j = sweep_json(r);
    j["config"] = config_json(o);
    if (o.json || !o.out.empty()) emit(o, canonical_dump(j) + "\n");
    if (!o.json) {
        std::ostream& os = o.out.empty() ? std::cout : std::cerr;
        os << "# sweep " << family_name(r.family) << " samples=" << o.samples << " seed=" << o.seed
           << " tol=" << o.tol << " threads=" << resolved_threads(o) << " algebra=" << algebra_source(o) << '\n';
        for (const auto& [label, count] : r.histogram) os << label << '\t' << count << '\n';
        os << "violations\t" << r.violations.size() << '\n';
    }
    return kOk;
}

int cmd_moment(const Options& o) {
    const auto c = levi_civita(load_algebra(o)).cast<double>();
    const auto r = sweep(family_spec(o), c, o.tol, resolved_threads(o));
    std::cerr << "# moment " << family_name(r.family) << " samples=" << o.samples << " seed=" << o.seed
              << " tol=" << o.tol << " threads=" << resolved_threads(o) << " algebra=" << algebra_source(o) << '\n';
    emit(o, moment_csv(r));
    return kOk;
}

int cmd_verify(const Options& o, bool samples_given) {
    VerifyConfig cfg;
    cfg.algebra = load_algebra(o);
    cfg.algebra_source = algebra_source(o);
    cfg.tol = o.tol;
    cfg.seed = o.seed;
    cfg.threads = resolved_threads(o);
    if (samples_given) cfg.sweep_samples = o.samples;
    const auto r = run_verification(cfg);
    emit(o, o.json ? canonical_dump(verify_json(r)) + "\n" : verify_text(r));
    return r.passed() ? kOk : kVerifyFailed;
}

int cmd_connection(const Options& o) {
    const auto c = levi_civita(load_algebra(o));
    Json table = Json::object();
    std::ostringstream text;
    text << "# Levi-Civita connection, algebra=" << algebra_source(o) << "\n";
    for (int j = 1; j <= kDim; ++j) {
        // nabla e^j = sum_{i,k} c(i,j,k) e^i (x) e^k
        std::string line;
        Json terms = Json::object();
        for (int i = 1; i <= kDim; ++i) {
            for (int k = 1; k <= kDim; ++k) {
                const Rational x = c(i, j, k);
                if (is_zero(x)) continue;
                const std::string key = "e" + std::to_string(i) + "(x)e" + std::to_string(k);
                terms[key] = format_scalar(x);
                line += (x < Rational(0) ? " - " : " + ") + format_scalar(x < Rational(0) ? -x : x) + " " + key;
            }
        }
        table["e" + std::to_string(j)] = terms;
        if (line.rfind(" + ", 0) == 0) line.erase(1, 2);
        if (line.rfind(" - ", 0) == 0) line.erase(2, 1);
        text << "nabla e" << j << " =" << (line.empty() ? " 0" : line) << '\n';
    }
    if (o.json) {
        emit(o, canonical_dump({{"algebra", algebra_source(o)}, {"nabla", table}}) + "\n");
    } else {
        emit(o, text.str());
    }
    return kOk;
}

} // namespace

int main(int argc, char** argv) {
    Options o;
    if (const char* env = std::getenv("ITV_SEED")) {
        try {
            o.seed = std::stoull(env);
        } catch (const std::exception&) {
            std::cerr << "error: ITV_SEED is not an unsigned integer\n";
            return kUsage;
        }
    }

    CLI::App app{"Intrinsic torsion varieties of almost-product structures on the Iwasawa manifold"};
    app.require_subcommand(1, 1);
    auto add_common = [&](CLI::App* sub) {
        sub->add_option("--tol", o.tol, "class threshold relative to |tau|")->check(CLI::PositiveNumber)->capture_default_str();
        sub->add_option("--algebra", o.algebra, "structure table JSON (default: Iwasawa)");
        sub->add_option("--out", o.out, "output file (default: stdout)");
        sub->add_flag("--json", o.json, "machine-readable output");
        sub->add_option("--seed", o.seed, "RNG seed (env ITV_SEED)")->capture_default_str();
        sub->add_option("--threads", o.threads, "worker threads (0: all cores)")->capture_default_str();
    };

    auto* classify = app.add_subcommand("classify", "classify one plane given by its Pluecker form");
    classify->add_option("--form", o.form, "simple 2-form, e.g. e56 or \"e13 - e24\"")->required();
    add_common(classify);

    auto* sweep_cmd = app.add_subcommand("sweep", "classify a parametrized family");
    auto* moment = app.add_subcommand("moment", "moment-map cloud of a family as CSV");
    CLI::Option* samples_opt = nullptr;
    for (auto* sub : {sweep_cmd, moment}) {
        sub->add_option("--family", o.family, "standard-vertical, horizontal-gr2k, geodesic-spheres[-plus|-minus], "
                                              "type11, vslice, generic")
            ->capture_default_str();
        sub->add_option("--samples", o.samples, "number of points")->check(CLI::PositiveNumber)->capture_default_str();
        add_common(sub);
    }

    auto* verify = app.add_subcommand("verify", "run the acceptance suite");
    samples_opt = verify->add_option("--samples", o.samples, "points per family sweep")->check(CLI::PositiveNumber);
    add_common(verify);

    auto* connection = app.add_subcommand("connection", "print the Levi-Civita connection");
    add_common(connection);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (classify->parsed()) return cmd_classify(o);
        if (sweep_cmd->parsed()) return cmd_sweep(o);
        if (moment->parsed()) return cmd_moment(o);
        if (verify->parsed()) return cmd_verify(o, samples_opt->count() > 0);
        if (connection->parsed()) return cmd_connection(o);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const InternalInvariantViolation& e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return kMath;
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kMath;
    }
    return kUsage;
}
