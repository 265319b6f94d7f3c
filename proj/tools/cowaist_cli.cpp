// cowaist: command-line front end.
//
// Exit codes: 0 ok, 1 verification failure, 2 usage error, 3 hypothesis failure.
// JSON goes to stdout, diagnostics to stderr.

#include <cowaist/cowaist.hpp>
#include <cowaist/pairing_json.hpp>
#include <cowaist/selftest.hpp>

#include <CLI11.hpp>

#include <iostream>

using namespace cowaist;

namespace
{

constexpr int exit_ok = 0;
constexpr int exit_verify = 1;
constexpr int exit_usage = 2;
constexpr int exit_hypothesis = 3;

void emit(const ojson &j) { std::cout << j.dump(2) << '\n'; }

std::vector<int> rank_range(int max_rank)
{
    std::vector<int> out;
    for (int r = 1; r <= max_rank; ++r) {
        out.push_back(r);
    }
    return out;
}

ojson report_to_json(const VerificationReport &report)
{
    ojson j;
    j["ok"] = report.ok;
    ojson ranks = ojson::array();
    for (const auto &rr : report.residuals) {
        ojson r;
        r["rank"] = rr.rank;
        r["ok"] = rr.residual.is_zero();
        r["residual"] = rr.residual.to_string();
        ranks.push_back(std::move(r));
    }
    j["ranks"] = std::move(ranks);
    return j;
}

// Inline JSON if the argument looks like an object, otherwise a file path.
std::string json_argument(const std::string &arg)
{
    const auto first = arg.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && arg[first] == '{') {
        return arg;
    }
    return read_text_file(arg);
}

struct Options {
    std::vector<int> partition;
    int N = 0;
    int max_rank = 4;
    std::string certificate_file;
    std::vector<int> ranks{1, 2, 3, 4};
    std::string bundle;
    std::string pairing_file;
    std::vector<int> witness;
    std::string m0 = "1";
    int k = 1;
    bool parts = false;
    std::string functor;
    std::string radius;
    int orientation = 1;
    std::string ahat_number;
    int d1 = 4;
    int d2 = 4;
    int trials = 100;
    std::uint64_t seed = 1;
};

int cmd_decompose(const Options &o)
{
    const Partition p(o.partition);
    if (o.N < 1) {
        throw usage_error("--N must be positive");
    }
    if (o.max_rank < 1) {
        throw usage_error("--max-rank must be positive");
    }
    DecompositionCertificate cert = decompose(p, build_library(o.N, o.N));
    const VerificationReport report = verify_certificate(cert, rank_range(o.max_rank));
    if (!report.ok) {
        emit(report_to_json(report));
        std::cerr << "error: generated certificate failed verification\n";
        return exit_verify;
    }
    cert.verified_ranks = rank_range(o.max_rank);
    emit(certificate_to_json(cert));
    return exit_ok;
}

int cmd_verify(const Options &o)
{
    const DecompositionCertificate cert = parse_certificate(read_text_file(o.certificate_file));
    const VerificationReport report = verify_certificate(cert, o.ranks);
    emit(report_to_json(report));
    if (!report.ok) {
        std::cerr << "error: certificate identity fails\n";
        return exit_verify;
    }
    return exit_ok;
}

int cmd_pipeline(const Options &o)
{
    const FormalBundle E = FormalBundle::parse(o.bundle);
    const PairingData data = parse_pairing(read_text_file(o.pairing_file));
    const Rational m0 = parse_rational(o.m0);
    const Partition witness(o.witness);
    const PipelineResult r = comparison_pipeline(E, data, witness, m0);

    ojson j;
    j["functor"] = functor_to_ojson(r.functor);
    j["first_functor"] = functor_to_ojson(r.first_functor);
    j["part"] = r.positive_part ? "G1" : "G2";
    j["k0"] = r.k0;
    j["c"] = to_string(r.c);
    j["A_N"] = to_string(r.A_N);
    j["C_k0"] = to_string(r.C_k0);
    j["max_C"] = to_string(r.max_C);
    j["m0"] = to_string(m0);
    j["bound"] = to_string(r.bound);
    j["chern_pairing"] = to_string(r.chern_pairing);
    j["ch_pairing"] = to_string(r.ch_pairing);
    j["ahat_pairing"] = to_string(r.ahat_pairing);
    emit(j);
    return exit_ok;
}

int cmd_adams(const Options &o)
{
    ojson j;
    j["k"] = o.k;
    ojson terms = ojson::array();
    for (const auto &t : adams_expand(o.k).terms) {
        ojson term;
        term["c"] = to_string(t.coefficient);
        term["functor"] = functor_to_ojson(t.functor);
        terms.push_back(std::move(term));
    }
    j["terms"] = std::move(terms);
    if (o.parts) {
        const AdamsParts parts = adams_parts(o.k);
        j["G1"] = functor_to_ojson(parts.positive);
        j["G2"] = functor_to_ojson(parts.negative);
        j["C_k"] = to_string(adams_bound_constant(o.k));
    }
    emit(j);
    return exit_ok;
}

int cmd_bounds(const Options &o)
{
    const FunctorExpr f = parse_functor(json_argument(o.functor));
    ojson j;
    j["C"] = to_string(bound_constant(f).constant);
    emit(j);
    return exit_ok;
}

int cmd_hopf(const Options &o)
{
    const SphereLineBundle b(parse_rational(o.radius), o.orientation);
    ojson j;
    j["radius"] = to_string(b.radius);
    j["curvature_norm"] = to_string(hopf_curvature_norm(b));
    j["chern_number"] = std::to_string(hopf_chern_number(b));
    if (o.ahat_number.empty()) {
        j["acw_lower_bound"] = to_string(1 / hopf_curvature_norm(b));
    } else {
        const AcwWitness w = acw_lower_bound(b, parse_rational(o.ahat_number));
        j["acw_lower_bound"] = to_string(w.bound);
        j["product_pairing"] = to_string(w.product_pairing);
    }
    emit(j);
    return exit_ok;
}

int cmd_norms(const Options &o)
{
    const NormSample s = kron_norm_check(o.d1, o.d2, o.trials, o.seed);
    ojson j;
    j["d1"] = s.d1;
    j["d2"] = s.d2;
    j["trials"] = s.trials;
    j["max_ratio"] = s.max_ratio;
    j["max_identity_defect"] = s.max_identity_defect;
    j["ok"] = s.max_ratio <= 1 + 1e-9 && s.max_identity_defect <= 1e-9;
    emit(j);
    return j["ok"].get<bool>() ? exit_ok : exit_verify;
}

int cmd_selftest(const Options &o)
{
    const auto checks = run_selftest(o.seed);
    ojson j;
    bool ok = true;
    ojson list = ojson::array();
    for (const auto &c : checks) {
        ojson e;
        e["name"] = c.name;
        e["ok"] = c.ok;
        if (!c.ok) {
            e["detail"] = c.detail;
            std::cerr << "FAIL " << c.name << ": " << c.detail << '\n';
        }
        ok = ok && c.ok;
        list.push_back(std::move(e));
    }
    j["checks"] = std::move(list);
    j["ok"] = ok;
    emit(j);
    return ok ? exit_ok : exit_verify;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Exact characteristic-class calculus for the K-cowaist / A-hat-cowaist comparison"};
    app.require_subcommand(1);
    Options o;

    auto *dec = app.add_subcommand("decompose", "certificate for prod c_{a_l}(E) = sum lambda_i ch_K(J_i(E))");
    dec->add_option("--partition", o.partition, "parts a_1,...,a_v")->required()->delimiter(',');
    dec->add_option("--N", o.N, "weight bound N >= sum of parts")->required();
    dec->add_option("--max-rank", o.max_rank, "verify at ranks 1..max-rank")->capture_default_str();

    auto *ver = app.add_subcommand("verify", "check a cc-cert-v1 certificate");
    ver->add_option("certificate", o.certificate_file, "certificate file")->required();
    ver->add_option("--ranks", o.ranks, "ranks to check")->delimiter(',')->capture_default_str();

    auto *pip = app.add_subcommand("pipeline", "bundle with nonzero Chern number -> bundle with nonzero A-hat pairing");
    pip->add_option("--bundle", o.bundle, "Chern roots, e.g. \"x1,-x1+2*x2\"")->required();
    pip->add_option("--pairing", o.pairing_file, "pairing JSON file")->required();
    pip->add_option("--witness", o.witness, "partition with nonzero Chern number")->required()->delimiter(',');
    pip->add_option("--m0", o.m0, "curvature scale m0 > 0 (rational)")->capture_default_str();

    auto *ad = app.add_subcommand("adams", "expand psi_k into wedge monomials");
    ad->add_option("--k", o.k, "k >= 1")->required();
    ad->add_flag("--parts", o.parts, "also print the honest parts G1, G2 and C_k");

    auto *bd = app.add_subcommand("bounds", "curvature bound constant of a functor");
    bd->add_option("functor", o.functor, "functor JSON text or file")->required();

    auto *hf = app.add_subcommand("hopf", "Hopf bundle over S^2(R)");
    hf->add_option("--radius", o.radius, "R > 0 (rational)")->required();
    hf->add_option("--orientation", o.orientation, "+1 or -1")->capture_default_str();
    hf->add_option("--ahat-number", o.ahat_number, "A-hat number of the other factor");

    auto *nm = app.add_subcommand("norms", "random check of ||A(x)I + I(x)B|| <= ||A|| + ||B||");
    nm->add_option("--d1", o.d1)->capture_default_str();
    nm->add_option("--d2", o.d2)->capture_default_str();
    nm->add_option("--trials", o.trials)->capture_default_str();
    nm->add_option("--seed", o.seed)->capture_default_str();

    auto *st = app.add_subcommand("selftest", "run the invariant suite");
    st->add_option("--seed", o.seed)->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp &e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp &e) {
        return app.exit(e);
    } catch (const CLI::ParseError &e) {
        app.exit(e);
        return exit_usage;
    }

    try {
        if (*dec) return cmd_decompose(o);
        if (*ver) return cmd_verify(o);
        if (*pip) return cmd_pipeline(o);
        if (*ad) return cmd_adams(o);
        if (*bd) return cmd_bounds(o);
        if (*hf) return cmd_hopf(o);
        if (*nm) return cmd_norms(o);
        if (*st) return cmd_selftest(o);
    } catch (const hypothesis_failure &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_hypothesis;
    } catch (const usage_error &e) {
        std::cerr << "error: " << e.what() << '\n';
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "internal error: " << e.what() << '\n';
        return exit_verify;
    }
    return exit_usage;
}
