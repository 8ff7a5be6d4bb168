// Acceptance suite: one pass/fail line per criterion, exact arithmetic
// everywhere, tolerances as stated (all are zero-tolerance except runtime
// targets). Exit code 0 iff every criterion passes.

#include <atomic>
#include <chrono>
#include <iostream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <hypercone/branden.hpp>
#include <hypercone/certificates.hpp>
#include <hypercone/equivariant.hpp>
#include <hypercone/hyperbolic.hpp>
#include <hypercone/io.hpp>
#include <hypercone/multipoly.hpp>
#include <hypercone/rng.hpp>

using namespace hypercone;

namespace {

int failures = 0;

struct Timer {
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    }
};

void report(int id, bool ok, const std::string& detail) {
    std::cout << "CRITERION " << id << " " << (ok ? "PASS" : "FAIL") << " - " << detail
              << std::endl;
    if (!ok) ++failures;
}

RatMatrix diag_of(const std::vector<Rational>& a) {
    RatMatrix d(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d(i, i) = a[i];
    return d;
}

RatMatrix ma_coeffs(int n, int d, std::initializer_list<std::pair<Subset, long>> terms) {
    SubsetTable t(n, d);
    RatMatrix v(t.size(), 1);
    for (const auto& [s, c] : terms) v(t.rank(s), 0) += c;
    return v;
}

unsigned worker_count() {
    unsigned w = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("HYPERCONE_THREADS")) {
        long cap = std::atol(env);
        if (cap >= 1) w = static_cast<unsigned>(cap);
    }
    return w ? w : 1;
}

// ---------------------------------------------------------------------------

bool criterion1(std::string& detail) {
    Timer timer;
    bool ok = true;
    auto expect = [&](bool cond, const char* what) {
        if (!cond) {
            ok = false;
            detail += std::string(" [failed: ") + what + "]";
        }
    };

    // D_e matrix on Ma_{2,4}
    expect(deriv_e_matrix(4, 2) == RatMatrix::from_rows({{1, 1, 1, 0, 0, 0},
                                                         {1, 0, 0, 1, 1, 0},
                                                         {0, 1, 0, 1, 0, 1},
                                                         {0, 0, 1, 0, 1, 1}}),
           "D_e matrix");

    // chain bases for n = 4: exact spans plus exact coordinates of the
    // displayed vectors inside the components
    ChainDecomposition c41 = chain_decompose_ma(4, 1);
    expect(c41.by_label(1).basis ==
               ma_coeffs(4, 1, {{{1}, 1}, {{2}, -1}})
                   .hcat(ma_coeffs(4, 1, {{{1}, 1}, {{3}, -1}}))
                   .hcat(ma_coeffs(4, 1, {{{1}, 1}, {{4}, -1}})),
           "V_{3,1} basis at level 1");
    expect(c41.by_label(0).basis == ma_coeffs(4, 1, {{{1}, 1}, {{2}, 1}, {{3}, 1}, {{4}, 1}}),
           "V_4 basis at level 1");

    ChainDecomposition c42 = chain_decompose_ma(4, 2);
    RatMatrix v22 = c42.by_label(2).basis;
    RatMatrix disp1 = ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 3}, -1}, {{2, 4}, -1}, {{3, 4}, 1}});
    RatMatrix disp2 = ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 4}, -1}, {{2, 3}, -1}, {{3, 4}, 1}});
    expect(v22.cols() == 2, "V_{2,2} dimension");
    expect(in_span(v22, disp1) && in_span(v22, disp2), "displayed V_{2,2} vectors in the component");
    expect(in_span(disp1.hcat(disp2), v22.col(0)) && in_span(disp1.hcat(disp2), v22.col(1)),
           "exact span equality for V_{2,2}");
    expect(coordinates(v22, disp1) == RatMatrix::from_rows({{-1}, {1}}), "display coords 1");
    expect(coordinates(v22, disp2) == RatMatrix::from_rows({{0}, {1}}), "display coords 2");
    RatMatrix v31 = c42.by_label(1).basis;
    expect(v31.col(0) == ma_coeffs(4, 2, {{{1, 3}, 1}, {{1, 4}, 1}, {{2, 3}, -1}, {{2, 4}, -1}}) &&
               v31.col(1) ==
                   ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 4}, 1}, {{2, 3}, -1}, {{3, 4}, -1}}) &&
               v31.col(2) ==
                   ma_coeffs(4, 2, {{{1, 2}, 1}, {{1, 3}, 1}, {{2, 4}, -1}, {{3, 4}, -1}}),
           "V_{3,1} basis at level 2");
    expect(c42.by_label(0).basis == sigma_full(2, 4).coeffs, "V_4 = sigma_2 at level 2");

    // alpha Gram [[2,1],[1,2]] on the V_{2,2} basis
    expect(basis_maps(4, 2).alpha == RatMatrix::from_rows({{2, 1}, {1, 2}}), "alpha Gram");

    // beta / G(a) 3x3 for n=4
    {
        std::vector<Rational> a{rat(1), rat(10), rat(100), rat(1000)};
        expect(basis_maps(4, 1).beta.eval(a) ==
                   RatMatrix::from_rows({{11, 1, 1}, {1, 101, 1}, {1, 1, 1001}}),
               "G(a) display");
    }

    // gamma_{0,4} row
    {
        SymPencil g = gamma_map(4, 0);
        std::vector<Rational> a{rat(7), rat(3), rat(2), rat(-5)};
        RatMatrix row(1, 3);
        for (int v = 0; v < 4; ++v) row += a[v] * g.coeff[v];
        expect(row == RatMatrix::from_rows({{4, 5, 12}}), "gamma row");
    }

    // B(x) display (d=2, three variables)
    {
        SymPencil b = branden_pencil(3, 2);
        std::vector<Rational> x{rat(1), rat(10), rat(100)};
        RatMatrix m = b.eval(x);
        bool good = b.size == 4;
        for (int i = 0; i < 4 && good; ++i) good = m(i, i) == 111;
        good = good && m(0, 1) == -1 && m(0, 2) == -10 && m(0, 3) == -100 && m(1, 2) == 0 &&
               m(1, 3) == 0 && m(2, 3) == 0;
        expect(good, "B(x) display");
    }

    // m(x) for (2,3)
    {
        WordVector mv = kernel_vector(3, 2);
        std::vector<Rational> x{rat(2), rat(3), rat(5)};
        auto v = mv.eval(x);
        expect(v.size() == 4 && v[0] == 10 && v[1] == 2 && v[2] == 3 && v[3] == 5, "m(x) display");
    }

    // B~ displays for (2,3) and (2,4)
    {
        SymPencil bt = compressed_pencil(3, 2);
        std::vector<Rational> x{rat(1), rat(10), rat(100)};
        RatMatrix m = bt.eval(x);
        bool good = m(0, 0) == 110 && m(0, 1) == 50 && m(0, 2) == 5 && m(1, 1) == 101 &&
                    m(1, 2) == rat(1, 2) && m(2, 2) == 11;
        expect(good, "B~ (2,3) display");
    }
    {
        SymPencil bt = compressed_pencil(4, 2);
        std::vector<Rational> x{rat(1), rat(10), rat(100), rat(1000)};
        RatMatrix m = bt.eval(x);
        bool good = m(0, 0) == 1110 && m(0, 1) == 550 && m(0, 2) == 505 && m(0, 3) == 55 &&
                    m(1, 1) == 1101 && m(1, 2) == rat(1001, 2) && m(1, 3) == rat(101, 2) &&
                    m(2, 2) == 1011 && m(2, 3) == rat(11, 2) && m(3, 3) == 111;
        expect(good, "B~ (2,4) display");
    }

    // n=3 phi(a) 3x3 display on the stated chain basis
    {
        ChainDecomposition chain = chain_decompose_ma(3, 1);
        RatMatrix t = chain.comps[0].basis.hcat(chain.comps[1].basis);
        CoefficientProfile prof;
        prof.n = 3;
        prof.labels = {0, 1};
        prof.a_diag = {rat(1), rat(1)};
        prof.b_diag = {rat(0), rat(1)};
        prof.c_off[{0, 1}] = 1;
        auto coeffs = profile_to_chain_pencil(prof, chain);
        std::vector<Rational> a{rat(2), rat(3), rat(5)};
        RatMatrix phi(3, 3);
        for (int v = 0; v < 3; ++v) phi += a[v] * coeffs[v];
        Rational s1 = a[0] + a[1] + a[2];
        bool good = phi(0, 0) == s1 && phi(0, 1) == a[0] - a[1] && phi(0, 2) == a[0] - a[2] &&
                    phi(1, 1) == 3 * a[0] + 3 * a[1] + 2 * a[2] &&
                    phi(1, 2) == 2 * a[0] + a[1] + a[2] &&
                    phi(2, 2) == 3 * a[0] + 2 * a[1] + 3 * a[2];
        expect(good, "phi(a) 3x3 display");
    }

    // n=3 Phi(A) 6x6 display on the stated W basis
    {
        ChainDecomposition chain = chain_decompose_ma(3, 1);
        CoefficientProfile prof;
        prof.n = 3;
        prof.labels = {0, 1};
        prof.a_diag = {rat(1), rat(1)};
        prof.b_diag = {rat(0), rat(1)};
        prof.c_off[{0, 1}] = 1;
        EquivariantPencil phi_big = assemble_phi(prof, chain);
        Rng rng(77);
        RatMatrix a = rng.random_symmetric(3, 6, 3);
        RatMatrix g = phi_big.eval(a);
        Rational tr = trace(a);
        bool good = phi_big.size() == 6;
        good = good && g(0, 0) == tr && g(0, 1) == a(0, 0) - a(1, 1) &&
               g(0, 2) == a(0, 0) - a(2, 2) && g(0, 3) == 2 * a(0, 1) && g(0, 4) == 2 * a(0, 2) &&
               g(0, 5) == 2 * a(1, 2);
        good = good && g(1, 1) == 3 * tr - a(2, 2) && g(1, 2) == a(0, 0) + tr && g(1, 3) == 0 &&
               g(1, 4) == a(0, 2) && g(1, 5) == -a(1, 2);
        good = good && g(2, 2) == 3 * tr - a(1, 1) && g(2, 3) == a(0, 1) && g(2, 4) == 0 &&
               g(2, 5) == -a(1, 2);
        good = good && g(3, 3) == 3 * tr - a(2, 2) && g(3, 4) == a(1, 2) && g(3, 5) == a(0, 2);
        good = good && g(4, 4) == 3 * tr - a(1, 1) && g(4, 5) == a(0, 1);
        good = good && g(5, 5) == 3 * tr - a(0, 0);
        expect(good, "Phi(A) 6x6 display");
    }

    double secs = timer.seconds();
    std::ostringstream ss;
    ss << "reference matrices reproduced exactly in " << secs << "s (target < 5s)";
    detail = ss.str() + detail;
    return ok && secs < 5.0;
}

bool criterion2(std::string& detail) {
    ChainDecomposition chain = chain_decompose_ma(3, 1);
    CoefficientProfile prof;
    prof.n = 3;
    prof.labels = {0, 1};
    prof.a_diag = {rat(1), rat(1)};
    prof.b_diag = {rat(0), rat(1)};
    prof.c_off[{0, 1}] = 1;
    EquivariantPencil phi_big = assemble_phi(prof, chain);
    int checked = 0;
    for (int s = 0; s < 60; ++s) {
        RatMatrix a = hypercone::detail::generic_symmetric_point(3, 2 * s + 1);
        Rational p1 = matrix_sigma(a, 1), p2 = matrix_sigma(a, 2), p3 = matrix_sigma(a, 3);
        Rational lhs = det(phi_big.eval(a));
        Rational rhs = 3 * (p1 * p1 * p1 + 2 * p1 * p2 + 3 * p3) *
                       (18 * p1 * p1 * p1 + 3 * p1 * p2 - p3);
        if (lhs != rhs) {
            detail = "det factorization failed at deterministic point " + std::to_string(s);
            return false;
        }
        ++checked;
    }
    detail = "det Phi factorization exact at " + std::to_string(checked) +
             " deterministic points, zero tolerance";
    return true;
}

bool criterion3(std::string& detail) {
    Timer timer;
    std::vector<std::pair<int, int>> pairs{{3, 1}, {3, 2}, {4, 1}, {4, 2}, {4, 3}, {5, 2}};
    std::atomic<int> disagreements{0};
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) break;
            auto [n, dsig] = pairs[i];
            ChainDecomposition chain = chain_decompose_ma(n, dsig - 1);
            SymPencil bt = compressed_pencil(n, dsig);
            EquivariantPencil phi_big = assemble_phi(extract_profile(bt, chain), chain);
            Rng rng = Rng::derive(2024, i);
            auto rep = psd_equivalence_check(
                phi_big, [&](const std::vector<Rational>& lam) { return bt.eval(lam); }, 200,
                rng);
            disagreements += rep.disagreements;
        }
    };
    unsigned workers = std::min<unsigned>(worker_count(), pairs.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    double secs = timer.seconds();
    std::ostringstream ss;
    ss << "psd equivalence on 6 pairs x 200 Cayley samples: " << disagreements.load()
       << " disagreements in " << secs << "s (target < 600s)";
    detail = ss.str();
    return disagreements.load() == 0 && secs < 600.0;
}

bool criterion4(std::string& detail) {
    std::vector<std::pair<int, int>> pairs;
    for (int n = 1; n <= 6; ++n)
        for (int d = 1; d <= n; ++d) pairs.push_back({n, d});
    std::atomic<int> disagreements{0};
    std::atomic<std::size_t> next{0};
    auto work = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= pairs.size()) break;
            auto [n, d] = pairs[i];
            SymPencil bt = compressed_pencil(n, d);
            HyperbolicInstance h = sigma_instance(n, d);
            Rng rng = Rng::derive(777, i);
            for (int it = 0; it < 1000; ++it) {
                auto a = rng.rational_vector(n, 5, 3);
                bool lmi = psd_check(bt.eval(a));
                bool roots = root_cone_member(h, a);
                if (lmi != roots) ++disagreements;
            }
        }
    };
    unsigned workers = std::min<unsigned>(worker_count(), pairs.size());
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(work);
    for (auto& t : pool) t.join();
    std::ostringstream ss;
    ss << "cross-oracle membership on " << pairs.size() << " (n,d) pairs x 1000 points: "
       << disagreements.load() << " disagreements";
    detail = ss.str();
    return disagreements.load() == 0;
}

std::map<std::pair<int, int>, CalibratedSystem> calibrated_cache;

const CalibratedSystem& calibrated(int n, int d) {
    auto key = std::make_pair(n, d);
    auto it = calibrated_cache.find(key);
    if (it == calibrated_cache.end())
        it = calibrated_cache.emplace(key, calibrate_identity(n, d)).first;
    return it->second;
}

bool criterion5(std::string& detail) {
    int systems = 0;
    for (int n = 2; n <= 5; ++n)
        for (int d = 0; d <= n - 1; ++d) {
            const CalibratedSystem& sys = calibrated(n, d);
            Rng rng = Rng::derive(5150, n * 10 + d);
            for (int it = 0; it < 50; ++it) {
                RatMatrix x = rng.random_symmetric(n, 4, 2);
                auto m = sys.minors_at(x);
                RatMatrix gram = sys.phi_c.eval(x);
                Rational pd1 = matrix_sigma(x, d + 1);
                Rational pd = matrix_sigma(x, d);
                Rational wtm = 0;
                for (std::size_t p = 0; p < m.size(); ++p) wtm += sys.w(p, 0) * m[p];
                if (wtm != pd) {
                    detail = "w^t M != P_d at (n,d)=(" + std::to_string(n) + "," +
                             std::to_string(d) + ")";
                    return false;
                }
                for (std::size_t p = 0; p < m.size(); ++p) {
                    Rational lhs = 0;
                    for (std::size_t q = 0; q < m.size(); ++q) lhs += gram(p, q) * m[q];
                    if (lhs != sys.w(p, 0) * pd1) {
                        detail = "identity row failed at (n,d)=(" + std::to_string(n) + "," +
                                 std::to_string(d) + ")";
                        return false;
                    }
                }
            }
            ++systems;
        }
    detail = "calibrated identity exact at 50 fresh points for " + std::to_string(systems) +
             " systems (n <= 5, 0 <= d <= n-1)";
    return true;
}

bool criterion6(std::string& detail) {
    int built = 0;
    for (int n = 2; n <= 5; ++n)
        for (int d = 1; d <= n - 1; ++d) {
            const CalibratedSystem& sys = calibrated(n, d);
            Certificate cert = newton_matrix_certificate(sys);
            sos_decompose(cert);
            if (!certificate_error(cert).empty()) {
                detail = "matrix certificate failed at (" + std::to_string(n) + "," +
                         std::to_string(d) + "): " + certificate_error(cert);
                return false;
            }
            Certificate classical = newton_classical_certificate(sys);
            if (!certificate_error(classical).empty()) {
                detail = "classical certificate failed at (" + std::to_string(n) + "," +
                         std::to_string(d) + ")";
                return false;
            }
            // independent verification from the serialized form alone
            Certificate back = certificate_from_json(certificate_to_json(cert));
            if (!certificate_error(back).empty()) {
                detail = "serialized verification failed at (" + std::to_string(n) + "," +
                         std::to_string(d) + ")";
                return false;
            }
            ++built;
        }
    detail = "newton certificates (matrix + classical + file re-check) for " +
             std::to_string(built) + " (n,d) pairs, exact PSD and zero residuals";
    return true;
}

bool criterion7(std::string& detail) {
    for (int n = 0; n <= 8; ++n)
        for (int d = 0; 2 * d <= n; ++d) {
            RatMatrix a = kneser_adjacency(n, std::min(d, n - d));
            if (rank(a) != a.rows()) {
                detail = "singular Kneser matrix at n=" + std::to_string(n) +
                         " d=" + std::to_string(d);
                return false;
            }
        }
    detail = "Kneser adjacency nonsingular for all 2d <= n <= 8 (complement labeling)";
    return true;
}

bool criterion8(std::string& detail) {
    // compressed pencil size
    for (int n = 1; n <= 6; ++n)
        for (int d = 1; d <= n; ++d)
            if (compressed_pencil(n, d).size != subsets(n, d - 1).size()) {
                detail = "compressed size mismatch";
                return false;
            }
    // Min dimension formula vs exact rank
    for (int n = 1; n <= 6; ++n)
        for (int d = 0; d <= n; ++d)
            if (Rational(long(min_space_dim(n, d))) != min_space_dim_formula(n, d)) {
                detail = "Min dimension mismatch at n=" + std::to_string(n) +
                         " d=" + std::to_string(d);
                return false;
            }
    // growth table, monotone in n for fixed k
    std::ostringstream table;
    bool monotone = true;
    for (int k = 0; k <= 2; ++k) {
        table << "  k=" << k << ":";
        Rational prev = 0;
        for (int n = k + 1; n <= 8; ++n) {
            Rational dim = min_space_dim_formula(n, n - k - 1);
            table << " " << to_string(dim);
            if (dim < prev) monotone = false;
            prev = dim;
        }
        table << "\n";
    }
    std::cout << "derivative-psd size growth (dim Min_{n-k-1,n}):\n" << table.str();
    if (!monotone) {
        detail = "growth table not monotone";
        return false;
    }
    detail = "compressed sizes C(n,d-1), Min dims vs exact rank (n <= 6), growth table monotone";
    return true;
}

bool criterion9(std::string& detail) {
    Rng rng(909);
    for (int it = 0; it < 200; ++it) {
        int deg = 2 + int(rng.next_below(4));
        std::vector<Rational> alpha(deg), beta(deg - 1);
        Rational cur = rng.rational(4, 2);
        for (int i = 0; i < deg; ++i) {
            alpha[i] = cur;
            cur += abs(rng.rational(3, 2));
        }
        bool mk = rng.next_below(2);
        for (int i = 0; i < deg - 1; ++i)
            beta[i] = mk ? alpha[i] + rat(long(rng.next_below(5)), 4) * (alpha[i + 1] - alpha[i])
                         : rng.rational(8, 2);
        UniPoly f = UniPoly::constant(1), g = UniPoly::constant(1);
        for (int i = 0; i < deg; ++i) f = f * UniPoly({-alpha[i], Rational(1)});
        for (int i = 0; i < deg - 1; ++i) g = g * UniPoly({-beta[i], Rational(1)});
        if (psd_check(bezout_matrix(f, g)) != roots_interlace(alpha, beta)) {
            detail = "bezout/interlacing disagreement";
            return false;
        }
    }
    // corner identities for sigma instances
    for (int n = 3; n <= 5; ++n)
        for (int d = 2; d <= n; ++d) {
            HyperbolicInstance h = sigma_instance(n, d);
            std::vector<Rational> a(n);
            for (int i = 0; i < n; ++i) a[i] = Rational(1) + abs(rng.rational(3, 2));
            auto x = rng.rational_vector(n, 5, 2);
            std::vector<Rational> neg_x(n);
            for (int i = 0; i < n; ++i) neg_x[i] = -x[i];
            UniPoly f = line_restriction(h, neg_x);  // h(te + x)
            auto dir_deriv = [&](const std::vector<Rational>& base) {
                std::vector<std::pair<Rational, Rational>> line;
                for (int s = 0; s <= h.degree; ++s) {
                    std::vector<Rational> z(n);
                    for (int i = 0; i < n; ++i) z[i] = base[i] + Rational(s) * a[i];
                    line.emplace_back(Rational(s), h.eval(z));
                }
                UniPoly q = interpolate(line);
                return q.degree() >= 1 ? q[1] : Rational(0);
            };
            std::vector<std::pair<Rational, Rational>> pts;
            for (int t = 0; t <= h.degree; ++t) {
                std::vector<Rational> y(n);
                for (int i = 0; i < n; ++i) y[i] = Rational(t) + x[i];
                pts.emplace_back(Rational(t), dir_deriv(y));
            }
            UniPoly g = interpolate(pts);
            RatMatrix b = bezout_matrix(f, g);
            std::size_t dd = b.rows();
            bool good = b(0, 0) == wronskian_eval(h, h.e, a, x);
            good = good && b(0, dd - 1) == h.eval(h.e) * dir_deriv(x) &&
                   b(dd - 1, 0) == b(0, dd - 1);
            good = good && b(dd - 1, dd - 1) == h.eval(h.e) * dir_deriv(h.e);
            if (!good) {
                detail = "corner identity failed for sigma_{" + std::to_string(d) + "," +
                         std::to_string(n) + "}";
                return false;
            }
        }
    detail = "bezout/interlacing on 200 seeded pairs and corner identities for sigma instances";
    return true;
}

}  // namespace

int main() {
    Timer total;
    std::string detail;

    detail.clear();
    report(1, criterion1(detail), detail);
    detail.clear();
    report(2, criterion2(detail), detail);
    detail.clear();
    report(3, criterion3(detail), detail);
    detail.clear();
    report(4, criterion4(detail), detail);
    detail.clear();
    report(5, criterion5(detail), detail);
    detail.clear();
    report(6, criterion6(detail), detail);
    detail.clear();
    report(7, criterion7(detail), detail);
    detail.clear();
    report(8, criterion8(detail), detail);
    detail.clear();
    report(9, criterion9(detail), detail);

    std::cout << (failures == 0 ? "ACCEPTANCE: ALL CRITERIA PASS" : "ACCEPTANCE: FAILURES PRESENT")
              << " (" << total.seconds() << "s total)" << std::endl;
    return failures == 0 ? 0 : 1;
}
