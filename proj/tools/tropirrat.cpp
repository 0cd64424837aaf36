// tropirrat: subdivisions, obstruction certificates and reproduction jobs.

#include "tropirrat/certificate.hpp"
#include "tropirrat/repro.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <fstream>
#include <iostream>

using namespace tropirrat;

namespace {

struct SourceFlags {
    std::string lifting;
    std::string slice_functional;
    std::string levels;
    std::string distance_to;
    std::string distance_mode = "continuous";
};

void add_source_flags(CLI::App* cmd, SourceFlags& f) {
    auto* lift = cmd->add_option("--lifting", f.lifting, "lifting JSON: {\"heights\":[{\"point\":[..],\"value\":\"p/q\"}]}");
    auto* fun = cmd->add_option("--slice-functional", f.slice_functional, "slicing functional, e.g. \"1,0,-1\"");
    auto* lev = cmd->add_option("--levels", f.levels, "slicing levels, e.g. \"1,2\"");
    auto* dist = cmd->add_option("--distance-to", f.distance_to, "polytope JSON T: lift by squared distance to T");
    cmd->add_option("--distance-mode", f.distance_mode, "continuous | nearest-lattice-point")
        ->check(CLI::IsMember({"continuous", "nearest-lattice-point"}));
    fun->needs(lev);
    lev->needs(fun);
    lift->excludes(fun)->excludes(dist);
    dist->excludes(fun);
}

void fill_source(const SourceFlags& f, PipelineInput& in) {
    if (!f.lifting.empty()) {
        in.lifting = lifting_from_json(parse_json_file(f.lifting), &in.polytope);
    } else if (!f.slice_functional.empty()) {
        in.slicing = slicing_from_strings(f.slice_functional, f.levels);
    } else if (!f.distance_to.empty()) {
        auto t = polytope_from_json(parse_json_file(f.distance_to));
        auto mode = f.distance_mode == "continuous" ? DistanceMode::Continuous : DistanceMode::NearestLatticePoint;
        in.lifting = distance_lifting(in.polytope, t, mode);
    } else {
        throw Error("BadInput", "give --lifting, --slice-functional/--levels or --distance-to");
    }
}

ClassifyOptions options_from_env() {
    ClassifyOptions o;
    if (const char* s = std::getenv("TROPIRRAT_WIDTH_BOUND")) {
        char* end = nullptr;
        long b = std::strtol(s, &end, 10);
        if (!*s || *end || b < 1) throw Error("BadInput", "TROPIRRAT_WIDTH_BOUND must be a positive integer");
        o.width_bound = b;
    }
    return o;
}

KnownPolytopeDB load_db(const std::string& path) {
    auto db = KnownPolytopeDB::builtin();
    if (!path.empty()) db.merge(KnownPolytopeDB::load(path));
    return db;
}

void write_json(const Json& j, const std::string& path) {
    if (path.empty() || path == "-") {
        std::cout << j.dump(2) << "\n";
        return;
    }
    std::ofstream out(path);
    if (!out) throw Error("Io", "cannot write " + path);
    out << j.dump(2) << "\n";
}

void print_counts(std::ostream& os, const Subdivision& s) {
    auto counts = face_count_by_dim(s);
    os << "dim   ";
    for (std::size_t k = 0; k < counts.size(); ++k) os << " " << k;
    os << "\nfaces ";
    for (auto c : counts) os << " " << c;
    os << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Tropical obstructions to stable rationality"};
    app.require_subcommand(1);

    std::string polytope_file, db_file, assume_file, out_file, cert_file;
    bool require_classified = false;
    SourceFlags sub_flags, cert_flags;

    auto* sub = app.add_subcommand("subdivide", "regular subdivision and its face counts");
    sub->add_option("--polytope", polytope_file, "polytope JSON: {\"ambient_dim\":n,\"vertices\":[[..]]}")->required();
    add_source_flags(sub, sub_flags);
    sub->add_option("--out", out_file, "write the subdivision JSON here (default: stdout)");

    std::string cert_polytope;
    auto* cert = app.add_subcommand("certify", "full pipeline; exit code 0 iff the obstruction is nontrivial");
    cert->add_option("--polytope", cert_polytope, "polytope JSON")->required();
    add_source_flags(cert, cert_flags);
    cert->add_option("--db", db_file, "extra known polytopes JSON (merged over the built-in registry)");
    cert->add_option("--assume", assume_file, "assumptions JSON: {\"distinct\":[[a,b]],\"not_point\":[a],\"equal\":[[a,b]]}");
    cert->add_flag("--require-classified", require_classified, "fail if an interior face stays unknown");
    cert->add_option("--out", out_file, "write the certificate here (default: stdout)");

    std::string verify_db;
    auto* ver = app.add_subcommand("verify", "re-run a certificate and compare it byte for byte");
    ver->add_option("--certificate", cert_file, "certificate JSON")->required();
    ver->add_option("--db", verify_db, "extra known polytopes JSON");

    std::string job;
    bool all = false, verbose = false;
    unsigned njobs = 1;
    auto* rep = app.add_subcommand("repro", "named reproduction jobs against golden values");
    rep->add_option("name", job, "job name");
    rep->add_flag("--all", all, "run every job");
    rep->add_option("--jobs", njobs, "worker threads")->check(CLI::PositiveNumber);
    rep->add_flag("-v,--verbose", verbose, "print every check");
    rep->add_flag_callback("--list", [] {
        for (const auto& n : repro_names()) std::cout << n << "\n";
        std::exit(0);
    }, "list job names");

    CLI11_PARSE(app, argc, argv);

    try {
        if (sub->parsed()) {
            PipelineInput in;
            in.polytope = polytope_from_json(parse_json_file(polytope_file));
            fill_source(sub_flags, in);
            auto s = in.lifting ? lower_envelope_subdivision(*in.lifting)
                                : slice_subdivision(in.polytope, in.slicing->functional, in.slicing->levels);
            write_json(subdivision_to_json(s), out_file);
            print_counts(out_file.empty() || out_file == "-" ? std::cerr : std::cout, s);
            return 0;
        }
        if (cert->parsed()) {
            PipelineInput in;
            in.polytope = polytope_from_json(parse_json_file(cert_polytope));
            fill_source(cert_flags, in);
            if (!assume_file.empty()) in.assumptions = assumptions_from_json(parse_json_file(assume_file));
            in.options = options_from_env();
            in.require_classified = require_classified;
            auto c = certify(in, load_db(db_file));
            write_json(c.json, out_file);
            std::cerr << "formal sum: " << c.sum.str() << "\nverdict: " << c.json["verdict"].get<std::string>() << "\n";
            return c.verdict.verdict == Verdict::Nontrivial ? 0 : 1;
        }
        if (ver->parsed()) {
            auto r = verify_certificate(parse_json_file(cert_file), load_db(verify_db));
            std::cout << (r.ok ? "ok: " : "mismatch: ") << r.detail << "\n";
            return r.ok ? 0 : 1;
        }
        if (rep->parsed()) {
            if (all == !job.empty()) throw Error("BadInput", "give a job name or --all");
            auto names = all ? repro_names() : std::vector<std::string>{job};
            auto results = run_repro_many(names, njobs, options_from_env());
            bool ok = true;
            for (const auto& r : results) {
                ok = ok && r.pass;
                std::cout << (r.pass ? "PASS " : "FAIL ") << r.name << " (" << r.checks.size() << " checks, "
                          << r.seconds << " s)\n";
                if (!r.error.empty()) std::cout << "  error: " << r.error << "\n";
                for (const auto& c : r.checks)
                    if (verbose || !c.pass)
                        std::cout << "  " << (c.pass ? "ok  " : "BAD ") << c.what << ": expected " << c.expected
                                  << ", got " << c.actual << "  [" << c.source << "]\n";
            }
            return ok ? 0 : 1;
        }
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
