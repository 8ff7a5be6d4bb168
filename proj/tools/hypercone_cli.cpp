// hypercone: exact spectrahedral representations of hyperbolicity cones of
// elementary symmetric polynomials and derivative relaxations of the PSD
// cone, with verifiable sum-of-squares certificates.
//
// Exit codes: 0 success / membership true, 1 verification or membership
// false, 2 usage or input errors.

#include <CLI11.hpp>

#include <cstdint>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <hypercone/branden.hpp>
#include <hypercone/certificates.hpp>
#include <hypercone/equivariant.hpp>
#include <hypercone/hyperbolic.hpp>
#include <hypercone/io.hpp>
#include <hypercone/suite.hpp>

using namespace hypercone;

namespace {

std::vector<Rational> parse_point_list(const std::string& text) {
    std::string normalized = text;
    for (auto& ch : normalized)
        if (ch == ',') ch = ' ';
    std::istringstream in(normalized);
    std::vector<Rational> out;
    std::string tok;
    while (in >> tok) out.push_back(parse_rational(tok));
    return out;
}

int report_membership(const RatMatrix& m, const std::vector<std::string>& labels) {
    RatMatrix witness = negative_witness(m);
    if (witness.empty()) {
        std::cout << "true\n";
        return 0;
    }
    std::cout << "false\n";
    std::cout << "witness v with v^t A(a) v = " << to_string(dot(witness, m * witness)) << ":\n";
    for (std::size_t i = 0; i < witness.rows(); ++i) {
        std::cout << "  ";
        if (i < labels.size()) std::cout << labels[i] << " ";
        std::cout << to_string(witness(i, 0)) << "\n";
    }
    return 1;
}

PencilDocument document_for(const SymPencil& pencil, json provenance) {
    PencilDocument doc;
    doc.n = pencil.n;
    doc.size = pencil.size;
    doc.labels = pencil.labels;
    doc.pencil = pencil;
    doc.provenance = std::move(provenance);
    return doc;
}

void emit_pencil(const PencilDocument& doc, const std::string& path, const std::string& format) {
    if (format == "sdpa")
        write_text_file(path, pencil_to_sdpa(doc));
    else
        save_pencil_document(doc, path);
}

// The equivariant pencil as a document over the n(n+1)/2 matrix variables
// x_11, x_12, ..., x_nn (sym basis ordering: diagonals then upper triangle).
PencilDocument document_for_matrix_pencil(const EquivariantPencil& phi, json provenance) {
    PencilDocument doc;
    doc.n = static_cast<int>(sym_basis_dim(phi.n));
    doc.size = phi.size();
    doc.pencil.n = doc.n;
    doc.pencil.size = doc.size;
    doc.pencil.coeff = phi.pencil.coeff;
    for (int i = 1; i <= phi.n; ++i) doc.labels.push_back("x_" + std::to_string(i) + std::to_string(i));
    for (int i = 1; i <= phi.n; ++i)
        for (int j = i + 1; j <= phi.n; ++j)
            doc.labels.push_back("x_" + std::to_string(i) + std::to_string(j));
    doc.pencil.labels = doc.labels;
    doc.provenance = std::move(provenance);
    return doc;
}

// locus sampler: the two-parameter slice a(u,v) = (u, v, s, s), s = (1-u-v)/2
// of the lambda = (1,1,1,1,0,0) member of the classified S_4-pencil family.
RatMatrix locus_matrix(const Rational& u, const Rational& v) {
    std::vector<Rational> a{u, v, (1 - u - v) / 2, (1 - u - v) / 2};
    BasisMaps bm1 = basis_maps(4, 1);
    SymPencil g0 = gamma_map(4, 0);
    Rational s1 = 0;
    for (const auto& q : a) s1 += q;
    RatMatrix m(4, 4);
    m(0, 0) = s1;
    RatMatrix row(1, 3);
    for (int i = 0; i < 4; ++i) row += a[i] * g0.coeff[i];
    for (int j = 0; j < 3; ++j) {
        m(0, 1 + j) = row(0, j);
        m(1 + j, 0) = row(0, j);
    }
    RatMatrix block = bm1.beta.eval(a) + s1 * bm1.alpha;  // M4(a) + sigma_1 M3-core
    for (int p = 0; p < 3; ++p)
        for (int q = 0; q < 3; ++q) m(1 + p, 1 + q) = block(p, q);
    return m;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"hypercone: exact LMI representations and SOS certificates"};
    app.require_subcommand(1);

    // ---- gen ----------------------------------------------------------------
    auto* gen = app.add_subcommand("gen", "generate pencils");
    gen->require_subcommand(1);

    auto* gen_sigma = gen->add_subcommand("sigma", "word pencil or its compression for sigma_{d,n}");
    int gs_n = 0, gs_d = 0;
    bool gs_raw = false, gs_compressed = false;
    std::string gs_out, gs_format = "json";
    gen_sigma->add_option("--n", gs_n, "number of variables")->required();
    gen_sigma->add_option("--d", gs_d, "degree")->required();
    gen_sigma->add_flag("--raw", gs_raw, "emit the word-indexed pencil B(x) (default)");
    gen_sigma->add_flag("--compressed", gs_compressed, "emit the compressed pencil");
    gen_sigma->add_option("--out", gs_out, "output file")->required();
    gen_sigma->add_option("--format", gs_format, "json or sdpa")
        ->check(CLI::IsMember({"json", "sdpa"}));

    auto* gen_deriv = gen->add_subcommand("derivative-psd",
                                          "pencil for the k-th derivative relaxation of the PSD cone");
    int gd_n = 0, gd_k = 0, gd_check = 0;
    std::uint64_t gd_seed = 0;
    bool gd_compress = false;
    std::string gd_out, gd_format = "json";
    gen_deriv->add_option("--n", gd_n, "matrix size")->required();
    gen_deriv->add_option("--k", gd_k, "derivative order")->required();
    gen_deriv->add_flag("--compress", gd_compress, "minors-compress the pencil");
    gen_deriv->add_option("--out", gd_out, "output file")->required();
    gen_deriv->add_option("--format", gd_format, "json or sdpa")
        ->check(CLI::IsMember({"json", "sdpa"}));
    gen_deriv->add_option("--check", gd_check,
                          "verify the PSD set against the root oracle at this many seeded samples");
    gen_deriv->add_option("--seed", gd_seed, "seed for --check sampling");

    // ---- member --------------------------------------------------------------
    auto* member = app.add_subcommand("member", "decide cone membership");
    auto* member_sigma = member->add_subcommand("sigma", "membership for sigma_{d,n}");
    int ms_n = 0, ms_d = 0;
    std::string ms_a;
    member_sigma->add_option("--n", ms_n)->required();
    member_sigma->add_option("--d", ms_d)->required();
    member_sigma->add_option("--a", ms_a, "comma-separated rationals")->required();
    std::string mp_pencil, mp_point;
    member->add_option("--pencil", mp_pencil, "pencil document (json)");
    member->add_option("--point", mp_point, "file with the evaluation point");

    // ---- certify / verify ------------------------------------------------------
    auto* certify = app.add_subcommand("certify", "emit SOS certificates");
    auto* cert_newton = certify->add_subcommand("newton", "Newton inequality certificates");
    int cn_n = 0, cn_d = 0;
    bool cn_matrix = false, cn_classical = false;
    std::string cn_out;
    cert_newton->add_option("--n", cn_n)->required();
    cert_newton->add_option("--d", cn_d)->required();
    cert_newton->add_flag("--matrix", cn_matrix, "matrix form (default)");
    cert_newton->add_flag("--classical", cn_classical, "classical diagonal form");
    cert_newton->add_option("--out", cn_out, "output file")->required();

    auto* verify = app.add_subcommand("verify", "re-check emitted artifacts");
    auto* verify_cert = verify->add_subcommand("cert", "verify a certificate file");
    std::string vc_file;
    verify_cert->add_option("file", vc_file, "certificate json")->required();

    // ---- suite / locus ----------------------------------------------------------
    auto* suite = app.add_subcommand("suite", "run the invariant suite");
    std::string su_level = "fast";
    std::uint64_t su_seed = 0;
    suite->add_option("--level", su_level)->check(CLI::IsMember({"fast", "full"}));
    suite->add_option("--seed", su_seed, "master RNG seed");

    auto* locus = app.add_subcommand("locus", "sample rank-drop loci to CSV");
    std::string lo_example = "quartic", lo_out;
    int lo_grid = 0;
    locus->add_option("--example", lo_example)->check(CLI::IsMember({"quartic"}));
    locus->add_option("--grid", lo_grid, "grid resolution per axis")->required();
    locus->add_option("--out", lo_out, "output CSV")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (gen_sigma->parsed()) {
            if (gs_d < 1 || gs_d > gs_n) {
                std::cerr << "error: need 1 <= d <= n\n";
                return 2;
            }
            bool compressed = gs_compressed && !gs_raw;
            SymPencil p = compressed ? compressed_pencil(gs_n, gs_d) : branden_pencil(gs_n, gs_d);
            json prov{{"generator", compressed ? "sigma-compressed" : "sigma-word"},
                      {"n", gs_n},
                      {"d", gs_d},
                      {"seed", 0}};
            emit_pencil(document_for(p, prov), gs_out, gs_format);
            std::cout << "wrote " << (compressed ? "compressed" : "word") << " pencil of size "
                      << p.size << " to " << gs_out << "\n";
            return 0;
        }
        if (gen_deriv->parsed()) {
            if (gd_k < 0 || gd_k > gd_n - 1) {
                std::cerr << "error: need 0 <= k <= n-1\n";
                return 2;
            }
            DerivativeConePencil dc = derivative_cone_pencil(gd_n, gd_k);
            const EquivariantPencil& phi = gd_compress ? dc.compressed : dc.full;
            json prov{{"generator", "derivative-psd"},
                      {"n", gd_n},
                      {"k", gd_k},
                      {"compressed", gd_compress},
                      {"seed", 0}};
            emit_pencil(document_for_matrix_pencil(phi, prov), gd_out, gd_format);
            std::cout << "wrote derivative-psd pencil, n=" << gd_n << " k=" << gd_k
                      << " size=" << phi.size() << " to " << gd_out << "\n";
            // size growth against the O(d^{2k+2}) statement: fixed k, growing n
            std::cout << "size growth at k=" << gd_k << " (n : dim Min):\n";
            for (int nn = gd_k + 1; nn <= std::max(gd_n, gd_k + 3); ++nn) {
                Rational dim = min_space_dim_formula(nn, nn - gd_k - 1);
                std::cout << "  " << nn << " : " << to_string(dim) << "\n";
            }
            if (gd_check > 0) {
                HyperbolicInstance h = sigma_instance(gd_n, gd_n - gd_k);
                Rng rng(gd_seed);
                auto rep = psd_equivalence_check(
                    phi,
                    [&](const std::vector<Rational>& lam) {
                        RatMatrix one(1, 1);
                        one(0, 0) = root_cone_member(h, lam) ? 1 : -1;
                        return one;
                    },
                    gd_check, rng);
                std::cout << "oracle check: " << rep.disagreements << " disagreements over "
                          << rep.samples << " samples\n";
                if (rep.disagreements != 0) return 1;
            }
            return 0;
        }
        if (member_sigma->parsed()) {
            auto a = parse_point_list(ms_a);
            if (static_cast<int>(a.size()) != ms_n) {
                std::cerr << "error: point has " << a.size() << " coordinates, expected " << ms_n
                          << "\n";
                return 2;
            }
            SymPencil p = compressed_pencil(ms_n, ms_d);
            return report_membership(p.eval(a), p.labels);
        }
        if (member->parsed()) {
            if (mp_pencil.empty() || mp_point.empty()) {
                std::cerr << "error: member needs either the sigma subcommand or --pencil/--point\n";
                return 2;
            }
            PencilDocument doc = load_pencil_document(mp_pencil);
            auto a = parse_point_list(read_text_file(mp_point));
            if (static_cast<int>(a.size()) != doc.n) {
                std::cerr << "error: point has " << a.size() << " coordinates, expected " << doc.n
                          << "\n";
                return 2;
            }
            return report_membership(doc.pencil.eval(a), doc.labels);
        }
        if (cert_newton->parsed()) {
            if (cn_d < 1 || cn_d > cn_n - 1) {
                std::cerr << "error: need 1 <= d <= n-1\n";
                return 2;
            }
            CalibratedSystem sys = calibrate_identity(cn_n, cn_d);
            Certificate cert = (cn_classical && !cn_matrix)
                                   ? newton_classical_certificate(sys)
                                   : newton_matrix_certificate(sys);
            sos_decompose(cert);
            save_certificate(cert, cn_out);
            std::cout << "wrote " << cert.kind << " certificate (gram " << cert.gram.rows() << "x"
                      << cert.gram.cols() << ", " << cert.squares.size() << " squares) to "
                      << cn_out << "\n";
            return 0;
        }
        if (verify_cert->parsed()) {
            Certificate cert = load_certificate(vc_file);
            std::string err = certificate_error(cert);
            if (err.empty()) {
                std::cout << "certificate ok: " << cert.kind << " n=" << cert.n << " d=" << cert.d
                          << "\n";
                return 0;
            }
            std::cout << "certificate INVALID: " << err << "\n";
            return 1;
        }
        if (suite->parsed()) {
            SuiteResult res = run_suite(su_level, su_seed);
            std::cout << res.report;
            std::cerr << res.timing;
            return res.all_passed ? 0 : 1;
        }
        if (locus->parsed()) {
            if (lo_grid < 2) {
                std::cerr << "error: need --grid >= 2\n";
                return 2;
            }
            std::ostringstream csv;
            csv << "u,v,rank\n";
            Rational lo = rat(-1, 2), hi = rat(1);
            Rational step = (hi - lo) / Rational(lo_grid - 1);
            for (int i = 0; i < lo_grid; ++i)
                for (int j = 0; j < lo_grid; ++j) {
                    Rational u = lo + Rational(i) * step;
                    Rational v = lo + Rational(j) * step;
                    csv << to_string(u) << "," << to_string(v) << ","
                        << rank(locus_matrix(u, v)) << "\n";
                }
            write_text_file(lo_out, csv.str());
            std::cout << "wrote " << lo_grid * lo_grid << " grid rows to " << lo_out << "\n";
            return 0;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    std::cerr << "error: no subcommand executed\n";
    return 2;
}
