// crc: collective rotation channel structure tool
//
//   crc structure --n 4 --d 2 [--format text|json|csv]
//   crc verify    --n 3 --d 2
//   crc simulate  --n 3 --d 2 --j 1/2 --trials 100 --seed 42
//   crc export    --n 3 --d 2 --out DIR [--projections]
//
// Exit codes: 0 success, 1 verification failure, 2 bad arguments,
// 3 dimension budget exceeded, 4 I/O failure.

#include "crc/codec.hpp"
#include "crc/error.hpp"
#include "crc/io.hpp"
#include "crc/structure.hpp"
#include "crc/verify.hpp"

#include "CLI11.hpp"

#include <cstdlib>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <vector>

namespace {

enum ExitCode { kOk = 0, kVerifyFailed = 1, kBadArgs = 2, kBudget = 3, kIo = 4 };

struct RunConfig {
    int n = 0;
    int d = 2;
    std::string j;
    std::string thetas;
    int trials = 100;
    int channel_steps = 10;
    std::uint64_t seed = 0;
    std::string format = "text";
    std::string out;
    double tol_rank = 1e-10;
    double tol_verify = 1e-9;
    std::size_t budget_dim = crc::kStructureBudgetDim;
    std::size_t oracle_budget_dim = crc::kSuperoperatorBudgetDim;
    bool projections = false;

    crc::Tolerances tolerances() const {
        crc::Tolerances tol;
        tol.rank_tol = tol_rank;
        tol.verify_tol = tol_verify;
        tol.validate();
        return tol;
    }

    std::optional<crc::Angles> angles() const {
        if (thetas.empty()) return std::nullopt;
        std::vector<double> values;
        std::stringstream in(thetas);
        std::string item;
        while (std::getline(in, item, ',')) {
            try {
                std::size_t used = 0;
                values.push_back(std::stod(item, &used));
                if (used != item.size()) throw std::invalid_argument(item);
            } catch (const std::exception&) {
                throw crc::Error(crc::ErrorCode::ParseError, "--thetas expects x,y,z, got '" + thetas + "'");
            }
        }
        if (values.size() != 3) {
            throw crc::Error(crc::ErrorCode::ParseError, "--thetas expects three comma-separated numbers");
        }
        const crc::Angles out{values[0], values[1], values[2]};
        return out;
    }

    void validate() const {
        if (n < 1) throw crc::Error(crc::ErrorCode::BadDimension, "--n must be >= 1");
        if (d < 2) throw crc::Error(crc::ErrorCode::BadDimension, "--d must be >= 2");
        if (trials < 1 || channel_steps < 1) throw crc::Error(crc::ErrorCode::OutOfRange, "--trials must be >= 1");
        tolerances();
        angles();
    }
};

int exit_code_for(crc::ErrorCode code) {
    switch (code) {
        case crc::ErrorCode::DimensionBudgetExceeded: return kBudget;
        case crc::ErrorCode::IoError: return kIo;
        case crc::ErrorCode::RankMismatch:
        case crc::ErrorCode::LiftCollapse:
        case crc::ErrorCode::BlockLeakage: return kVerifyFailed;
        default: return kBadArgs;
    }
}

// Writes to --out when given, stdout otherwise.
void emit(const RunConfig& cfg, const std::string& text) {
    if (cfg.out.empty()) {
        std::cout << text;
    } else {
        crc::write_text_file(cfg.out, text);
    }
}

std::string fmt_sci(double x) {
    std::ostringstream s;
    s << std::scientific << std::setprecision(3) << x;
    return s.str();
}

int cmd_structure(const RunConfig& cfg) {
    const crc::Tolerances tol = cfg.tolerances();
    const crc::CollectiveSystem sys = crc::build_collective_system(cfg.n, cfg.d, cfg.budget_dim);
    const crc::StructureDecomposition decomp = crc::construct_irrep_basis(sys, tol);
    const crc::StructureReport report = crc::structure_report(decomp);
    if (cfg.format == "json") {
        emit(cfg, crc::report_json(report).dump(2) + "\n");
    } else if (cfg.format == "csv") {
        emit(cfg, crc::report_csv(report));
    } else {
        std::string text = crc::report_text(report);
        const std::string stairs = crc::render_staircase(report);
        if (!stairs.empty()) text += "\n" + stairs;
        emit(cfg, text);
    }
    return kOk;
}

int cmd_verify(const RunConfig& cfg) {
    crc::VerifyConfig vc;
    vc.n = cfg.n;
    vc.d = cfg.d;
    vc.thetas = cfg.angles();
    vc.tol = cfg.tolerances();
    vc.budget_dim = cfg.budget_dim;
    vc.oracle_budget_dim = cfg.oracle_budget_dim;
    const crc::VerifyOutcome outcome = crc::run_verification(vc);

    if (cfg.format == "json") {
        nlohmann::json checks = nlohmann::json::array();
        for (const crc::CheckResult& c : outcome.checks) {
            checks.push_back({{"name", c.name},
                              {"status", crc::to_string(c.status)},
                              {"measured", c.measured},
                              {"threshold", c.threshold},
                              {"detail", c.detail}});
        }
        nlohmann::json doc = {{"schema_version", crc::kSchemaVersion},
                              {"kind", "verify"},
                              {"n", cfg.n},
                              {"d", cfg.d},
                              {"passed", outcome.passed()},
                              {"predicted_commutant_dim", outcome.predicted_commutant_dim},
                              {"reorthonormalized_groups", outcome.reorthonormalized_groups},
                              {"checks", checks}};
        doc["commutant_dim"] = outcome.commutant_dim ? nlohmann::json(*outcome.commutant_dim) : nlohmann::json();
        emit(cfg, doc.dump(2) + "\n");
    } else {
        std::ostringstream out;
        out << "verify n=" << cfg.n << " d=" << cfg.d << "\n";
        for (const crc::CheckResult& c : outcome.checks) {
            out << std::left << std::setw(8) << crc::to_string(c.status) << std::setw(42) << c.name;
            if (c.status != crc::CheckStatus::Skipped && c.threshold > 0.0) {
                out << " measured=" << fmt_sci(c.measured) << " threshold=" << fmt_sci(c.threshold);
            }
            if (!c.detail.empty()) out << "  (" << c.detail << ")";
            out << "\n";
        }
        out << "commutant dim (sum p_j^2): " << outcome.predicted_commutant_dim;
        if (outcome.commutant_dim) out << ", brute-force oracle: " << *outcome.commutant_dim;
        out << "\n";
        if (outcome.reorthonormalized_groups > 0) {
            out << "lifted families re-orthonormalized: " << outcome.reorthonormalized_groups << "\n";
        }
        if (const crc::CheckResult* fail = outcome.first_failure()) {
            out << "FAILED: " << fail->name << "\n";
        } else {
            out << "all checks passed\n";
        }
        emit(cfg, out.str());
    }
    if (const crc::CheckResult* fail = outcome.first_failure()) {
        std::cerr << "verification failed: " << fail->name << "\n";
        return kVerifyFailed;
    }
    return kOk;
}

int cmd_simulate(const RunConfig& cfg) {
    if (cfg.j.empty()) throw crc::Error(crc::ErrorCode::UnknownBlock, "--j is required");
    const crc::HalfInt j = crc::HalfInt::parse(cfg.j);
    const crc::Tolerances tol = cfg.tolerances();
    const auto thetas = cfg.angles();
    const crc::CollectiveSystem sys = crc::build_collective_system(cfg.n, cfg.d, cfg.budget_dim);
    const crc::StructureDecomposition decomp = crc::construct_irrep_basis(sys, tol);
    const crc::NoiselessCode code = crc::make_code(decomp, j);

    const crc::NoiseReport rot =
        crc::simulate_noise(code, crc::NoiseMode::RandomRotations, cfg.trials, cfg.seed, thetas);
    const crc::NoiseReport chan =
        crc::simulate_noise(code, crc::NoiseMode::Channel, cfg.channel_steps, cfg.seed, thetas);

    if (cfg.format == "json") {
        auto dump = [](const crc::NoiseReport& r) {
            return nlohmann::json{{"trials", r.trials},
                                  {"min_fidelity", r.min_fidelity},
                                  {"mean_fidelity", r.mean_fidelity},
                                  {"max_leakage", r.max_leakage},
                                  {"max_gauge_dependence", r.max_gauge_dependence},
                                  {"control_min_fidelity", r.control_min_fidelity},
                                  {"control_mean_fidelity", r.control_mean_fidelity}};
        };
        const nlohmann::json doc = {{"schema_version", crc::kSchemaVersion},
                                    {"kind", "simulate"},
                                    {"n", cfg.n},
                                    {"d", cfg.d},
                                    {"j2", j.twice()},
                                    {"seed", cfg.seed},
                                    {"logical_dim", code.logical_dim},
                                    {"gauge_dim", code.gauge_dim},
                                    {"random_rotations", dump(rot)},
                                    {"channel", dump(chan)}};
        emit(cfg, doc.dump(2) + "\n");
        return kOk;
    }

    std::ostringstream out;
    out << "noiseless subsystem n=" << cfg.n << " d=" << cfg.d << " j=" << j.to_string() << "\n";
    out << "logical dim p_j = " << code.logical_dim << ", gauge dim q_j = " << code.gauge_dim << "\n";
    if (code.trivial()) out << "warning: p_j = 1, the logical space is one-dimensional\n";
    auto line = [&](const char* name, const crc::NoiseReport& r) {
        out << std::left << std::setw(18) << name << std::setprecision(15) << "trials=" << r.trials
            << "  min fidelity=" << r.min_fidelity << "  mean fidelity=" << r.mean_fidelity
            << "  max leakage=" << fmt_sci(r.max_leakage) << "  gauge dependence=" << fmt_sci(r.max_gauge_dependence)
            << "\n"
            << std::setw(18) << "" << "negative control: min fidelity=" << r.control_min_fidelity
            << "  mean fidelity=" << r.control_mean_fidelity << "\n";
    };
    line("random rotations", rot);
    line("channel", chan);
    emit(cfg, out.str());
    return kOk;
}

int cmd_export(const RunConfig& cfg) {
    const crc::Tolerances tol = cfg.tolerances();
    const crc::CollectiveSystem sys = crc::build_collective_system(cfg.n, cfg.d, cfg.budget_dim);
    const crc::StructureDecomposition decomp = crc::construct_irrep_basis(sys, tol);
    const crc::StructureReport report = crc::structure_report(decomp);

    const std::filesystem::path dir = cfg.out.empty() ? std::filesystem::path(".") : std::filesystem::path(cfg.out);
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw crc::Error(crc::ErrorCode::IoError, "cannot create " + dir.string() + ": " + ec.message());

    crc::write_text_file(dir / "structure.json", crc::report_json(report).dump(2) + "\n");
    crc::write_text_file(dir / "structure.csv", crc::report_csv(report));
    crc::write_text_file(dir / "basis.json", crc::basis_json(decomp).dump() + "\n");
    if (cfg.projections) crc::write_text_file(dir / "projections.json", crc::projections_json(decomp).dump() + "\n");
    std::cout << "wrote " << (dir / "structure.json").string() << ", structure.csv, basis.json"
              << (cfg.projections ? ", projections.json" : "") << "\n";
    return kOk;
}

void add_common(CLI::App* cmd, RunConfig& cfg) {
    cmd->add_option("--n", cfg.n, "number of qudits")->required();
    cmd->add_option("--d", cfg.d, "qudit dimension (2s+1)");
    cmd->add_option("--thetas", cfg.thetas, "channel angles x,y,z");
    cmd->add_option("--seed", cfg.seed, "master seed");
    cmd->add_option("--format", cfg.format, "output format")->check(CLI::IsMember({"text", "json", "csv"}));
    cmd->add_option("--out", cfg.out, "output file (export: directory)");
    cmd->add_option("--tol-rank", cfg.tol_rank, "relative singular-value threshold");
    cmd->add_option("--tol-verify", cfg.tol_verify, "verification tolerance");
    cmd->add_option("--budget-dim", cfg.budget_dim, "largest d^n allowed");
    cmd->add_option("--oracle-budget-dim", cfg.oracle_budget_dim, "largest d^n for dim^2-sized oracles");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"collective rotation channel: block structure, verification and noiseless encoding"};
    app.require_subcommand(1);

    RunConfig cfg;
    if (const char* env = std::getenv("CRC_BUDGET_DIM")) {
        try {
            cfg.budget_dim = static_cast<std::size_t>(std::stoull(env));
        } catch (const std::exception&) {
            std::cerr << "error: CRC_BUDGET_DIM must be a positive integer\n";
            return kBadArgs;
        }
    }

    CLI::App* structure = app.add_subcommand("structure", "multiplicity table and Pascal staircase");
    CLI::App* verify = app.add_subcommand("verify", "run every invariant and oracle check");
    CLI::App* simulate = app.add_subcommand("simulate", "encode, apply collective noise, decode");
    CLI::App* exporter = app.add_subcommand("export", "write structure table, basis and projections");
    for (CLI::App* cmd : {structure, verify, simulate, exporter}) add_common(cmd, cfg);
    simulate->add_option("--j", cfg.j, "block label, e.g. 1/2");
    simulate->add_option("--trials", cfg.trials, "random-rotation trials");
    simulate->add_option("--channel-steps", cfg.channel_steps, "repeated channel applications");
    exporter->add_flag("--projections", cfg.projections, "also write central projections");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kOk : kBadArgs;
    }

    try {
        cfg.validate();
        if (*structure) return cmd_structure(cfg);
        if (*verify) return cmd_verify(cfg);
        if (*simulate) return cmd_simulate(cfg);
        if (*exporter) return cmd_export(cfg);
    } catch (const crc::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_code_for(e.code());
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kVerifyFailed;
    }
    return kBadArgs;
}
