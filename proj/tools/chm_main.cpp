// chm - command-line toolkit for complex Hadamard matrices: constructions,
// validation, equivalence, defect/perturbation analysis, state-space
// geometry and a built-in catalog.
//
// Exit codes: 0 = success / check passed, 1 = failed check or runtime error,
// 2 = usage error.

#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "chm/catalog.hpp"
#include "chm/constructions.hpp"
#include "chm/equivalence.hpp"
#include "chm/geometry.hpp"
#include "chm/hadamard.hpp"
#include "chm/matrix_io.hpp"
#include "chm/tangent.hpp"

using nlohmann::json;
using namespace chm;

namespace {

struct Options {
    bool json_output = false;
    int threads = 1;
};

std::uint64_t default_seed() {
    if (const char* env = std::getenv("CHM_SEED")) {
        try {
            return std::stoull(env);
        } catch (const std::exception&) {
            throw std::invalid_argument("CHM_SEED is not an unsigned integer");
        }
    }
    return 42;
}

json validation_to_json(const ValidationReport& report) {
    return json{{"is_unitary", report.is_unitary},
                {"is_flat", report.is_flat},
                {"is_hadamard", report.is_hadamard()},
                {"max_unitarity_residual", report.max_unitarity_residual},
                {"max_modulus_deviation", report.max_modulus_deviation}};
}

void emit(const Options& opts, const json& doc, const std::string& text) {
    if (opts.json_output) {
        std::cout << doc.dump(2) << "\n";
    } else {
        std::cout << text;
    }
}

int save_and_report(const Options& opts, const ComplexMatrix& m, const std::string& out,
                    bool exact, json& doc, std::ostringstream& text) {
    const ValidationReport report = is_hadamard(m, 1e-9);
    doc["validation"] = validation_to_json(report);
    text << "n = " << m.dim() << "\n"
         << "hadamard: " << (report.is_hadamard() ? "yes" : "no")
         << "  (unitarity residual " << report.max_unitarity_residual
         << ", modulus deviation " << report.max_modulus_deviation << ")\n";
    if (!out.empty()) {
        const MatrixRepresentation repr =
            exact ? MatrixRepresentation::ExactPhase : MatrixRepresentation::Cartesian;
        save_matrix(m, out, repr, {doc.value("command", std::string("chm")), "chm cli"});
        doc["out"] = out;
        doc["representation"] = exact ? "exact-phase" : "cartesian";
        text << "written: " << out << "\n";
    } else {
        doc["out"] = nullptr;
        doc["representation"] = nullptr;
    }
    return 0;
}

std::vector<double> parse_phase_list(const std::string& csv) {
    std::vector<double> phases;
    std::stringstream ss(csv);
    std::string item;
    while (std::getline(ss, item, ',')) {
        std::size_t used = 0;
        const double value = std::stod(item, &used);
        while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used]))) {
            ++used;
        }
        if (used != item.size()) {
            throw std::invalid_argument("--diag: cannot parse phase '" + item + "'");
        }
        phases.push_back(value);
    }
    if (phases.empty()) throw std::invalid_argument("--diag: empty phase list");
    return phases;
}

json certificate_summary(const EquivalenceCertificate& cert) {
    return certificate_to_json(cert);
}

int run_equiv(const Options& opts, const std::string& path_a, const std::string& path_b,
              std::string method, const std::string& cert_path, double tol) {
    const ComplexMatrix a = load_matrix(path_a);
    const ComplexMatrix b = load_matrix(path_b);
    if (method == "auto") method = a.dim() <= 6 ? "oracle" : "invariant";

    json doc{{"command", "equiv"}, {"a", path_a}, {"b", path_b}, {"method", method},
             {"tol", tol}};
    std::ostringstream text;
    EquivalenceVerdict verdict;

    if (method == "oracle") {
        verdict = equivalent_bruteforce(a, b, tol);
    } else if (method == "invariant") {
        verdict = invariant_distinguish(a, b);
    } else if (method == "certificate") {
        if (cert_path.empty()) {
            throw CLI::ValidationError("equiv", "--method certificate requires --cert");
        }
        const EquivalenceCertificate cert = load_certificate(cert_path);
        const CertificateCheck check = verify_certificate(a, b, cert, tol);
        verdict.status =
            check.ok ? EquivalenceStatus::Equivalent : EquivalenceStatus::Inconclusive;
        verdict.residual = check.residual;
        verdict.method = "certificate";
        if (check.ok) verdict.certificate = cert;
    } else {
        throw CLI::ValidationError("equiv", "unknown --method '" + method + "'");
    }

    doc["status"] = to_string(verdict.status);
    doc["residual"] = verdict.residual;
    doc["certificate"] =
        verdict.certificate ? certificate_summary(*verdict.certificate) : json(nullptr);
    text << "verdict: " << to_string(verdict.status) << "  (method " << verdict.method
         << ", residual " << verdict.residual << ")\n";
    // for the search methods --cert names the output file for the witness
    if (verdict.certificate && method != "certificate" && !cert_path.empty()) {
        save_certificate(*verdict.certificate, cert_path);
        doc["cert_out"] = cert_path;
        text << "certificate written: " << cert_path << "\n";
    } else {
        doc["cert_out"] = nullptr;
    }
    emit(opts, doc, text.str());
    return verdict.status == EquivalenceStatus::Equivalent ? 0 : 1;
}

int run_catalog(const Options& opts, bool list, const std::string& build_name,
                const std::string& out, bool verify_all) {
    json doc{{"command", "catalog"}};
    std::ostringstream text;
    if (list) {
        doc["entries"] = json::array();
        for (const CatalogEntry& entry : catalog()) {
            doc["entries"].push_back({{"name", entry.name}, {"description", entry.description}});
            text << entry.name << "  -  " << entry.description << "\n";
        }
        emit(opts, doc, text.str());
        return 0;
    }
    if (!build_name.empty()) {
        const CatalogEntry* entry = find_catalog_entry(build_name);
        if (entry == nullptr) {
            throw std::invalid_argument("catalog: unknown entry '" + build_name + "'");
        }
        if (out.empty()) throw CLI::ValidationError("catalog", "--build requires --out");
        const ComplexMatrix m = entry->build();
        std::string repr = "exact-phase";
        try {
            save_matrix(m, out, MatrixRepresentation::ExactPhase, {entry->name, "chm catalog"});
        } catch (const MatrixFileError&) {
            save_matrix(m, out, MatrixRepresentation::Cartesian, {entry->name, "chm catalog"});
            repr = "cartesian";
        }
        doc["name"] = entry->name;
        doc["out"] = out;
        doc["representation"] = repr;
        text << "written: " << out << " (" << repr << ")\n";
        emit(opts, doc, text.str());
        return 0;
    }
    if (verify_all) {
        bool all_passed = true;
        doc["entries"] = json::array();
        for (const CatalogEntry& entry : catalog()) {
            json entry_doc{{"name", entry.name}, {"checks", json::array()}};
            for (const PropertyCheckResult& result : verify_entry(entry)) {
                entry_doc["checks"].push_back({{"property", result.property},
                                               {"passed", result.passed},
                                               {"residual", result.residual}});
                all_passed = all_passed && result.passed;
                text << (result.passed ? "pass" : "FAIL") << "  " << entry.name << "  "
                     << result.property << "  residual " << result.residual << "\n";
            }
            doc["entries"].push_back(std::move(entry_doc));
        }
        doc["all_passed"] = all_passed;
        text << (all_passed ? "all catalog entries verified\n" : "catalog verification FAILED\n");
        emit(opts, doc, text.str());
        return all_passed ? 0 : 1;
    }
    throw CLI::ValidationError("catalog", "choose one of --list, --build, --verify-all");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"chm - complex Hadamard matrix toolkit"};
    app.require_subcommand(1);
    Options opts;
    app.add_flag("--json", opts.json_output, "emit machine-readable JSON");
    app.add_option("--threads", opts.threads, "worker threads for sampled computations")
        ->check(CLI::PositiveNumber);

    // fourier
    auto* cmd_fourier = app.add_subcommand("fourier", "build the Fourier matrix F_n");
    int fourier_n = 0;
    std::string fourier_out;
    bool fourier_exact = false;
    cmd_fourier->add_option("--n", fourier_n, "dimension")->required();
    cmd_fourier->add_option("--out", fourier_out, "write the matrix to PATH");
    cmd_fourier->add_flag("--exact", fourier_exact, "store exact rational phases");

    // h4
    auto* cmd_h4 = app.add_subcommand("h4", "build the 4x4 one-parameter family H(z)");
    double h4_phase = 0.0;
    std::string h4_out;
    cmd_h4->add_option("--z-phase", h4_phase, "phase of z in radians")->required();
    cmd_h4->add_option("--out", h4_out, "write the matrix to PATH");

    // dita
    auto* cmd_dita = app.add_subcommand("dita", "warped tensor product of Hadamard matrices");
    std::string dita_outer, dita_out;
    std::vector<std::string> dita_inner, dita_diag;
    cmd_dita->add_option("--outer", dita_outer, "outer Hadamard matrix file")->required();
    cmd_dita->add_option("--inner", dita_inner, "inner Hadamard matrix files (N1 of them)")
        ->required();
    cmd_dita->add_option("--diag", dita_diag,
                         "comma-separated diagonal phases (N1-1 lists, each starting with 0)");
    cmd_dita->add_option("--out", dita_out, "write the matrix to PATH");

    // check
    auto* cmd_check = app.add_subcommand("check", "Hadamard property report for a matrix file");
    std::string check_path;
    double check_tol = kDefaultTol;
    cmd_check->add_option("path", check_path, "matrix file")->required();
    cmd_check->add_option("--tol", check_tol, "tolerance");

    // dephase
    auto* cmd_dephase = app.add_subcommand("dephase", "canonical dephased form");
    std::string dephase_path, dephase_out;
    cmd_dephase->add_option("path", dephase_path, "matrix file")->required();
    cmd_dephase->add_option("--out", dephase_out, "write the dephased matrix to PATH");

    // equiv
    auto* cmd_equiv = app.add_subcommand("equiv", "decide or witness Hadamard equivalence");
    std::string equiv_a, equiv_b, equiv_method = "auto", equiv_cert;
    double equiv_tol = 1e-8;
    cmd_equiv->add_option("a", equiv_a, "first matrix file")->required();
    cmd_equiv->add_option("b", equiv_b, "second matrix file")->required();
    cmd_equiv->add_option("--method", equiv_method, "oracle|invariant|certificate (default auto)");
    cmd_equiv->add_option("--cert", equiv_cert,
                          "certificate file: input for --method certificate, output otherwise");
    cmd_equiv->add_option("--tol", equiv_tol, "entrywise tolerance");

    // defect
    auto* cmd_defect = app.add_subcommand("defect", "gcd-sum defect and numerical kernel");
    int defect_n = 0;
    double defect_tol_rank = 1e-10;
    bool defect_formula_only = false;
    cmd_defect->add_option("--n", defect_n, "dimension")->required();
    cmd_defect->add_option("--tol-rank", defect_tol_rank, "relative rank threshold");
    cmd_defect->add_flag("--formula-only", defect_formula_only, "skip the SVD computation");

    // perturb
    auto* cmd_perturb =
        app.add_subcommand("perturb", "order-by-order continuation around the Fourier matrix");
    int perturb_n = 0, perturb_max_order = 0, perturb_samples = 5;
    std::uint64_t perturb_seed = 0;
    bool perturb_seed_set = false;
    double perturb_tol = 1e-6;
    cmd_perturb->add_option("--n", perturb_n, "dimension")->required();
    cmd_perturb->add_option("--max-order", perturb_max_order, "highest order to attempt")
        ->required();
    cmd_perturb->add_option("--samples", perturb_samples, "kernel directions to sample");
    cmd_perturb->add_option("--seed", perturb_seed, "random seed (default CHM_SEED or 42)")
        ->each([&](const std::string&) { perturb_seed_set = true; });
    cmd_perturb->add_option("--tol", perturb_tol, "consistency threshold");

    // conjecture
    auto* cmd_conjecture =
        app.add_subcommand("conjecture", "conjectured family dimension at N = p1*p2^2");
    int conj_p1 = 0, conj_p2 = 0;
    cmd_conjecture->add_option("--p1", conj_p1, "prime p1")->required();
    cmd_conjecture->add_option("--p2", conj_p2, "prime p2")->required();

    // mub
    auto* cmd_mub = app.add_subcommand("mub", "complete MUB system in prime dimension");
    int mub_p = 0;
    bool mub_do_check = false;
    std::string mub_out_dir;
    cmd_mub->add_option("--p", mub_p, "prime dimension")->required();
    cmd_mub->add_flag("--check", mub_do_check, "re-verify pairwise unbiasedness");
    cmd_mub->add_option("--out-dir", mub_out_dir, "write one matrix file per basis");

    // geometry
    auto* cmd_geometry = app.add_subcommand("geometry", "state-space geometry checks");
    int geometry_n = 0;
    bool geometry_radii = false;
    std::vector<std::string> geometry_orth;
    cmd_geometry->add_option("--n", geometry_n, "dimension");
    cmd_geometry->add_flag("--radii", geometry_radii, "outsphere/insphere radii report");
    cmd_geometry
        ->add_option("--orthogonality", geometry_orth,
                     "two basis files; check total orthogonality of their simplices")
        ->expected(2);

    // catalog
    auto* cmd_catalog = app.add_subcommand("catalog", "built-in named matrices");
    bool catalog_list = false, catalog_verify = false;
    std::string catalog_build, catalog_out;
    cmd_catalog->add_flag("--list", catalog_list, "list entries");
    cmd_catalog->add_option("--build", catalog_build, "build entry NAME");
    cmd_catalog->add_option("--out", catalog_out, "output path for --build");
    cmd_catalog->add_flag("--verify-all", catalog_verify, "verify every entry's properties");

    // global flags like --json may appear after the subcommand name
    for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
        sub->fallthrough();
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 2;
    }

    try {
        if (*cmd_fourier) {
            json doc{{"command", "fourier"}, {"n", fourier_n}};
            std::ostringstream text;
            const ComplexMatrix m = fourier(fourier_n);
            const int code = save_and_report(opts, m, fourier_out, fourier_exact, doc, text);
            emit(opts, doc, text.str());
            return code;
        }
        if (*cmd_h4) {
            json doc{{"command", "h4"}, {"z_phase", h4_phase}};
            std::ostringstream text;
            const ComplexMatrix m = hadamard4(std::polar(1.0, h4_phase));
            const int code = save_and_report(opts, m, h4_out, false, doc, text);
            emit(opts, doc, text.str());
            return code;
        }
        if (*cmd_dita) {
            DitaSpec spec{load_matrix(dita_outer), {}, {}};
            for (const std::string& path : dita_inner) spec.inners.push_back(load_matrix(path));
            for (const std::string& csv : dita_diag) {
                spec.diagonals.push_back(parse_phase_list(csv));
            }
            json doc{{"command", "dita"},
                     {"n1", spec.outer.dim()},
                     {"n2", spec.inners.empty() ? 0 : spec.inners.front().dim()}};
            std::ostringstream text;
            const ComplexMatrix m = dita(spec);
            const int code = save_and_report(opts, m, dita_out, false, doc, text);
            emit(opts, doc, text.str());
            return code;
        }
        if (*cmd_check) {
            const ComplexMatrix m = load_matrix(check_path);
            const ValidationReport report = is_hadamard(m, check_tol);
            json doc{{"command", "check"},
                     {"path", check_path},
                     {"n", m.dim()},
                     {"tol", check_tol}};
            doc["validation"] = validation_to_json(report);
            std::ostringstream text;
            text << "n = " << m.dim() << "\n"
                 << "unitary: " << (report.is_unitary ? "yes" : "no") << "  (residual "
                 << report.max_unitarity_residual << ")\n"
                 << "flat:    " << (report.is_flat ? "yes" : "no") << "  (deviation "
                 << report.max_modulus_deviation << ")\n"
                 << "hadamard: " << (report.is_hadamard() ? "yes" : "no") << "\n";
            emit(opts, doc, text.str());
            return report.is_hadamard() ? 0 : 1;
        }
        if (*cmd_dephase) {
            const ComplexMatrix m = load_matrix(dephase_path);
            const DephaseResult result = dephase(m);
            json doc{{"command", "dephase"},
                     {"path", dephase_path},
                     {"n", m.dim()},
                     {"d_left", result.d_left},
                     {"d_right", result.d_right}};
            std::ostringstream text;
            text << "dephased " << dephase_path << " (n = " << m.dim() << ")\n";
            if (!dephase_out.empty()) {
                save_matrix(result.matrix, dephase_out, MatrixRepresentation::Cartesian,
                            {"dephased", "chm dephase"});
                doc["out"] = dephase_out;
                text << "written: " << dephase_out << "\n";
            } else {
                doc["out"] = nullptr;
            }
            emit(opts, doc, text.str());
            return 0;
        }
        if (*cmd_equiv) {
            return run_equiv(opts, equiv_a, equiv_b, equiv_method, equiv_cert, equiv_tol);
        }
        if (*cmd_defect) {
            json doc{{"command", "defect"},
                     {"n", defect_n},
                     {"d1", defect_formula(defect_n)},
                     {"dephased_bound", dephased_bound(defect_n)},
                     {"tol_rank", defect_tol_rank}};
            std::ostringstream text;
            text << "n = " << defect_n << "\n"
                 << "d1 (gcd sum) = " << defect_formula(defect_n) << "\n"
                 << "dephased bound = " << dephased_bound(defect_n) << "\n";
            int code = 0;
            if (defect_formula_only) {
                doc["kernel_dim"] = nullptr;
                doc["agree"] = nullptr;
            } else {
                const DefectReport report = defect_numeric(defect_n, defect_tol_rank);
                doc["kernel_dim"] = report.kernel_dim_numeric;
                doc["agree"] = report.agree;
                text << "numerical kernel dimension = " << report.kernel_dim_numeric << "\n"
                     << "agree: " << (report.agree ? "yes" : "no") << "\n";
                code = report.agree ? 0 : 1;
            }
            emit(opts, doc, text.str());
            return code;
        }
        if (*cmd_perturb) {
            const std::uint64_t seed = perturb_seed_set ? perturb_seed : default_seed();
            const ContinuationReport report =
                continue_orders(perturb_n, perturb_max_order, perturb_samples, seed,
                                perturb_tol, opts.threads);
            json samples_doc = json::array();
            for (const ContinuationSample& sample : report.per_sample) {
                samples_doc.push_back(
                    {{"residuals", sample.residuals},
                     {"breakdown", sample.breakdown ? json(*sample.breakdown) : json(nullptr)}});
            }
            json doc{{"command", "perturb"},
                     {"n", report.n},
                     {"max_order", report.max_order},
                     {"samples", report.samples},
                     {"seed", report.seed},
                     {"tolerance", report.tolerance},
                     {"breakdown_order",
                      report.breakdown_order ? json(*report.breakdown_order) : json(nullptr)},
                     {"note", report.note},
                     {"per_sample", std::move(samples_doc)}};
            std::ostringstream text;
            text << "n = " << report.n << ", orders up to " << report.max_order << ", "
                 << report.samples << " samples, seed " << report.seed << "\n";
            if (!report.note.empty()) text << "note: " << report.note << "\n";
            if (report.breakdown_order) {
                text << "breakdown order: " << *report.breakdown_order << "\n";
            } else {
                text << "breakdown order: none\n";
            }
            for (std::size_t k = 0; k < report.per_sample.size(); ++k) {
                text << "  sample " << k << ":";
                for (double r : report.per_sample[k].residuals) text << " " << r;
                text << "\n";
            }
            emit(opts, doc, text.str());
            return 0;
        }
        if (*cmd_conjecture) {
            const long long value = conjectured_dimension(conj_p1, conj_p2);
            const int n = conj_p1 * conj_p2 * conj_p2;
            json doc{{"command", "conjecture"}, {"p1", conj_p1}, {"p2", conj_p2},
                     {"n", n},           {"conjectured_dimension", value},
                     {"d1", defect_formula(n)}, {"dephased_bound", dephased_bound(n)}};
            std::ostringstream text;
            text << "N = " << conj_p1 << "*" << conj_p2 << "^2 = " << n << "\n"
                 << "conjectured nonlinear family dimension = " << value << "\n"
                 << "first-order dephased bound = " << dephased_bound(n) << "\n";
            emit(opts, doc, text.str());
            return 0;
        }
        if (*cmd_mub) {
            const MubSet set = mub_prime(mub_p);
            json doc{{"command", "mub"},
                     {"p", mub_p},
                     {"bases", set.bases.size()},
                     {"pairwise_unbiased", set.pairwise_unbiased},
                     {"worst_deviation", set.worst_deviation}};
            std::ostringstream text;
            text << "p = " << mub_p << ": " << set.bases.size() << " bases, worst deviation "
                 << set.worst_deviation << "\n";
            int code = 0;
            if (mub_do_check) {
                const MubCheck check = mub_check(set);
                doc["check"] = {{"ok", check.ok}, {"worst_deviation", check.worst_deviation}};
                text << "pairwise unbiased: " << (check.ok ? "yes" : "no") << "\n";
                code = check.ok ? 0 : 1;
            }
            if (!mub_out_dir.empty()) {
                std::filesystem::create_directories(mub_out_dir);
                json files = json::array();
                for (std::size_t k = 0; k < set.bases.size(); ++k) {
                    const std::string path = (std::filesystem::path(mub_out_dir) /
                                              ("mub_p" + std::to_string(mub_p) + "_b" +
                                               std::to_string(k) + ".json"))
                                                 .string();
                    save_matrix(set.bases[k], path, MatrixRepresentation::Cartesian,
                                {"mub_p" + std::to_string(mub_p) + "_b" + std::to_string(k),
                                 "chm mub"});
                    files.push_back(path);
                    text << "written: " << path << "\n";
                }
                doc["files"] = std::move(files);
            }
            emit(opts, doc, text.str());
            return code;
        }
        if (*cmd_geometry) {
            json doc{{"command", "geometry"}};
            std::ostringstream text;
            int code = 0;
            if (geometry_radii) {
                if (geometry_n < 2) {
                    throw CLI::ValidationError("geometry", "--radii requires --n >= 2");
                }
                const SphereRadii radii = sphere_radii(geometry_n);
                doc["n"] = geometry_n;
                doc["radii"] = {{"outsphere", radii.outsphere},
                                {"insphere", radii.insphere},
                                {"ratio", radii.ratio}};
                text << "n = " << geometry_n << "\n"
                     << "outsphere = " << radii.outsphere << "\n"
                     << "insphere  = " << radii.insphere << "\n"
                     << "ratio     = " << radii.ratio << "\n";
            } else {
                doc["radii"] = nullptr;
            }
            if (!geometry_orth.empty()) {
                const SimplexEmbedding sa = basis_simplex(load_matrix(geometry_orth[0]));
                const SimplexEmbedding sb = basis_simplex(load_matrix(geometry_orth[1]));
                const OrthogonalityReport report = total_orthogonality(sa, sb);
                doc["orthogonality"] = {{"a", geometry_orth[0]},
                                        {"b", geometry_orth[1]},
                                        {"orthogonal", report.orthogonal},
                                        {"max_dot", report.max_dot}};
                text << "totally orthogonal: " << (report.orthogonal ? "yes" : "no")
                     << "  (max dot " << report.max_dot << ")\n";
                if (!report.orthogonal) code = 1;
            } else {
                doc["orthogonality"] = nullptr;
            }
            if (!geometry_radii && geometry_orth.empty()) {
                throw CLI::ValidationError("geometry",
                                           "choose --radii and/or --orthogonality A B");
            }
            emit(opts, doc, text.str());
            return code;
        }
        if (*cmd_catalog) {
            return run_catalog(opts, catalog_list, catalog_build, catalog_out, catalog_verify);
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << "usage error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
