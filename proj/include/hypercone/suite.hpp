#pragma once

#include <atomic>
#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "branden.hpp"
#include "certificates.hpp"
#include "equivariant.hpp"
#include "exactla.hpp"
#include "exterior.hpp"
#include "hyperbolic.hpp"
#include "multiaffine.hpp"
#include "rng.hpp"

namespace hypercone {

// Deterministic invariant suite: every check is a pure function of the seed.
// Verdicts are stable across runs and across worker counts; ordering of the
// report is fixed by check id.

struct SuiteCheck {
    std::string id;
    std::string name;
    std::function<bool(std::uint64_t seed, bool full)> run;
};

namespace suite_detail {

inline RatMatrix diag_of(const std::vector<Rational>& a) {
    RatMatrix d(a.size(), a.size());
    for (std::size_t i = 0; i < a.size(); ++i) d(i, i) = a[i];
    return d;
}

}  // namespace suite_detail

inline std::vector<SuiteCheck> suite_checks() {
    using suite_detail::diag_of;
    std::vector<SuiteCheck> checks;

    checks.push_back({"C01", "psd coefficient test agrees with exact LDLT", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 1);
        int iters = full ? 500 : 150;
        for (int it = 0; it < iters; ++it) {
            int n = 1 + int(rng.next_below(full ? 8 : 5));
            RatMatrix m = rng.random_symmetric(n, 5, 2);
            bool by_poly = psd_check(m);
            bool by_ldlt = true;
            try {
                ldlt_psd_decompose(m);
            } catch (const std::invalid_argument&) {
                by_ldlt = false;
            }
            if (by_poly != by_ldlt) return false;
            RatMatrix w = negative_witness(m);
            if (by_poly != w.empty()) return false;
            if (!w.empty() && !(dot(w, m * w) < 0)) return false;
        }
        return true;
    }});

    checks.push_back({"C02", "char_poly invariant under signed permutations", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 2);
        int iters = full ? 40 : 15;
        for (int it = 0; it < iters; ++it) {
            int n = 2 + int(rng.next_below(5));
            RatMatrix m = rng.random_symmetric(n, 5, 3);
            auto perm = rng.random_permutation(n);
            RatMatrix s(n, n);
            for (int i = 0; i < n; ++i) s(perm[i] - 1, i) = rng.next_below(2) ? 1 : -1;
            if (char_poly(s.transpose() * m * s) != char_poly(m)) return false;
        }
        return true;
    }});

    checks.push_back({"C03", "Kneser adjacency full rank (2m <= n)", [](std::uint64_t, bool full) {
        int cap = full ? 8 : 6;
        for (int n = 0; n <= cap; ++n)
            for (int m = 0; 2 * m <= n; ++m)
                if (rank(kneser_adjacency(n, m)) != subsets(n, m).size()) return false;
        return true;
    }});

    checks.push_back({"C04", "chain decomposition dimensions and orthogonality", [](std::uint64_t, bool full) {
        int cap = full ? 6 : 4;
        for (int n = 1; n <= cap; ++n)
            for (int d = 0; d <= n; ++d) {
                ChainDecomposition cd = chain_decompose_ma(n, d);
                std::size_t total = 0;
                for (std::size_t a = 0; a < cd.comps.size(); ++a) {
                    total += cd.comps[a].basis.cols();
                    for (std::size_t b = 0; b < a; ++b)
                        if (!(cd.comps[b].basis.transpose() * cd.comps[a].basis).is_zero())
                            return false;
                }
                if (total != subsets(n, d).size()) return false;
            }
        return true;
    }});

    checks.push_back({"C05", "D_e^(n-2d) isomorphism via the Kneser matrix", [](std::uint64_t, bool full) {
        int cap = full ? 8 : 6;
        for (int n = 1; n <= cap; ++n)
            for (int d = 0; 2 * d <= n; ++d) {
                RatMatrix de = RatMatrix::identity(subsets(n, n - d).size());
                for (int level = n - d; level > d; --level) de = deriv_e_matrix(n, level) * de;
                if (rank(de) != subsets(n, d).size()) return false;
            }
        return true;
    }});

    checks.push_back({"C06", "chain components are S_n stable", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 6);
        int iters = full ? 20 : 8;
        for (int it = 0; it < iters; ++it) {
            int n = 3 + int(rng.next_below(full ? 3 : 2));
            int d = int(rng.next_below(n + 1));
            RatMatrix p = ma_permutation_matrix(rng.random_permutation(n), n, d);
            for (const auto& c : chain_decompose_ma(n, d).comps) {
                RatMatrix moved = p * c.basis;
                for (std::size_t j = 0; j < moved.cols(); ++j)
                    if (!in_span(c.basis, moved.col(j))) return false;
            }
        }
        return true;
    }});

    checks.push_back({"C07", "Delta operators commute", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 7);
        int iters = full ? 25 : 10;
        for (int it = 0; it < iters; ++it) {
            int n = 3 + int(rng.next_below(2));
            RatMatrix a = rng.random_symmetric(n, 3, 2), b = rng.random_symmetric(n, 3, 2);
            if (delta_op(a, n, 1) * delta_op(b, n, 2) != delta_op(b, n, 1) * delta_op(a, n, 2))
                return false;
        }
        return true;
    }});

    checks.push_back({"C08", "b-form block orthogonality for diagonal X", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 8);
        int n = full ? 5 : 4, d = 2;
        auto a = rng.rational_vector(n, 5, 3);
        RatMatrix g = bform(diag_of(a), d);
        TBasis tb(n, d);
        for (std::size_t p = 0; p < tb.size(); ++p)
            for (std::size_t q = p + 1; q < tb.size(); ++q) {
                TTriple tp = tb.triple(p), tq = tb.triple(q);
                if ((tp.J1 != tq.J1 || tp.J2 != tq.J2) && g(p, q) != 0) return false;
            }
        return true;
    }});

    checks.push_back({"C09", "rho scaling law b(rho f, rho f) = 2^k b(f,f)", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 9);
        int iters = full ? 20 : 8;
        for (int it = 0; it < iters; ++it) {
            int n = 3 + int(rng.next_below(2));
            int d = 1 + int(rng.next_below(2));
            auto a = rng.rational_vector(n, 4, 2);
            RatMatrix g = bform(diag_of(a), d);
            RatMatrix ld = iota_diag(a, n, d);
            for (const auto& [key, idx] : t_block_split(n, d)) {
                int k = static_cast<int>(key.first.size());
                RatMatrix c(idx.size(), 1);
                for (std::size_t i = 0; i < idx.size(); ++i) c(i, 0) = rng.rational(3, 2);
                Rational lhs = 0;
                for (std::size_t i = 0; i < idx.size(); ++i)
                    for (std::size_t j = 0; j < idx.size(); ++j)
                        lhs += c(i, 0) * c(j, 0) * g(idx[i], idx[j]);
                lhs *= (k == 0) ? Rational(1) : rat(1, 2);
                RatMatrix p = rho_map(n, d, key.first, key.second) * c;
                Rational rhs = 0;
                for (std::size_t r = 0; r < p.rows(); ++r) rhs += p(r, 0) * p(r, 0) * ld(r, 0);
                if (rhs != pow_rational(rat(2), k) * lhs) return false;
            }
        }
        return true;
    }});

    checks.push_back({"C10", "word pencil identity B(x) m(x) = delta d! sigma_d", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 10);
        int cap = full ? 6 : 4;
        for (int n = 1; n <= cap; ++n)
            for (int d = 1; d <= n; ++d) {
                SymPencil b = branden_pencil(n, d);
                WordVector mv = kernel_vector(n, d);
                HyperbolicInstance sd = sigma_instance(n, d);
                for (int it = 0; it < 5; ++it) {
                    auto x = rng.rational_vector(n, 5, 2);
                    RatMatrix bm = b.eval(x);
                    auto m = mv.eval(x);
                    Rational target = Rational(factorial(d)) * sd.eval(x);
                    for (std::size_t r = 0; r < b.size; ++r) {
                        Rational s = 0;
                        for (std::size_t c = 0; c < b.size; ++c) s += bm(r, c) * m[c];
                        if (s != (r == 0 ? target : Rational(0))) return false;
                    }
                }
            }
        return true;
    }});

    checks.push_back({"C11", "closed-form compression equals (1/d!) Q^t B Q", [](std::uint64_t, bool full) {
        int cap = full ? 6 : 4;
        for (int n = 2; n <= cap; ++n)
            for (int d = 1; d <= n; ++d) {
                SymPencil b = branden_pencil(n, d);
                SymPencil bt = compressed_pencil(n, d);
                RatMatrix q = branden_q(n, d);
                Rational f = make_rational(1, factorial(d));
                for (int k = 0; k < n; ++k)
                    if (bt.coeff[k] != f * (q.transpose() * b.coeff[k] * q)) return false;
            }
        return true;
    }});

    checks.push_back({"C12", "det B~ vanishes on the sigma hypersurface", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 12);
        int done = 0, want = full ? 100 : 30;
        while (done < want) {
            int n = 3 + int(rng.next_below(full ? 3 : 2));
            int d = 2 + int(rng.next_below(n - 1));
            auto a = rng.rational_vector(n - 1, 5, 2);
            Rational denom = sigma_instance(n - 1, d - 1).eval(a);
            if (denom == 0) continue;
            Rational t = -sigma_instance(n - 1, d).eval(a) / denom;
            std::vector<Rational> point = a;
            point.push_back(t);
            if (det(compressed_pencil(n, d).eval(point)) != 0) return false;
            ++done;
        }
        return true;
    }});

    checks.push_back({"C13", "B~ equivariance under transpositions", [](std::uint64_t, bool full) {
        int cap = full ? 5 : 4;
        for (int n = 3; n <= cap; ++n)
            for (int d = 1; d <= n; ++d) {
                SymPencil bt = compressed_pencil(n, d);
                for (int t = 1; t < n; ++t) {
                    std::vector<int> tau(n);
                    for (int i = 0; i < n; ++i) tau[i] = i + 1;
                    std::swap(tau[t - 1], tau[t]);
                    RatMatrix p = ma_permutation_matrix(tau, n, d - 1);
                    for (int i = 0; i < n; ++i)
                        if (p.transpose() * bt.coeff[i] * p != bt.coeff[tau[i] - 1]) return false;
                }
            }
        return true;
    }});

    checks.push_back({"C14", "cross-oracle membership: LMI vs root counting", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 14);
        int cap = full ? 6 : 4;
        int per = full ? 40 : 15;
        for (int n = 1; n <= cap; ++n)
            for (int d = 1; d <= n; ++d) {
                HyperbolicInstance h = sigma_instance(n, d);
                for (int it = 0; it < per; ++it) {
                    auto a = rng.rational_vector(n, 4, 2);
                    if (sigma_cone_member(n, d, a) != root_cone_member(h, a)) return false;
                }
            }
        return true;
    }});

    checks.push_back({"C15", "restriction property of the assembled Phi", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 15);
        std::vector<std::pair<int, int>> cases{{3, 2}, {4, 2}};
        if (full) {
            cases.push_back({4, 3});
            cases.push_back({5, 2});
        }
        for (auto [n, dsig] : cases) {
            ChainDecomposition chain = chain_decompose_ma(n, dsig - 1);
            CoefficientProfile prof = extract_profile(compressed_pencil(n, dsig), chain);
            EquivariantPencil phi_big = assemble_phi(prof, chain);
            auto chain_coeffs = profile_to_chain_pencil(prof, chain);
            for (int it = 0; it < 3; ++it) {
                auto lambda = rng.rational_vector(n, 4, 2);
                RatMatrix small = restrict_to_v(phi_big, phi_big.eval(diag_of(lambda)));
                RatMatrix expect(small.rows(), small.cols());
                for (int v = 0; v < n; ++v) expect += lambda[v] * chain_coeffs[v];
                if (small != expect) return false;
            }
        }
        return true;
    }});

    checks.push_back({"C16", "psd equivalence Phi(X) vs phi(lambda)", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 16);
        std::vector<std::pair<int, int>> cases{{3, 1}, {3, 2}};
        if (full) cases.push_back({4, 2});
        for (auto [n, dsig] : cases) {
            ChainDecomposition chain = chain_decompose_ma(n, dsig - 1);
            SymPencil bt = compressed_pencil(n, dsig);
            EquivariantPencil phi_big = assemble_phi(extract_profile(bt, chain), chain);
            auto rep = psd_equivalence_check(
                phi_big, [&](const std::vector<Rational>& lam) { return bt.eval(lam); },
                full ? 25 : 10, rng);
            if (rep.disagreements != 0) return false;
        }
        return true;
    }});

    checks.push_back({"C17", "Min dimension formula matches exact rank", [](std::uint64_t, bool full) {
        int cap = full ? 5 : 4;
        for (int n = 2; n <= cap; ++n)
            for (int d = 0; d <= std::min(3, n); ++d)
                if (Rational(long(min_space_dim(n, d))) != min_space_dim_formula(n, d))
                    return false;
        return true;
    }});

    checks.push_back({"C18", "calibrated identity Phi_c M = w P_{d+1}", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 18);
        int cap = full ? 4 : 3;
        for (int n = 2; n <= cap; ++n)
            for (int d = 0; d <= n - 1; ++d) {
                CalibratedSystem sys = calibrate_identity(n, d);
                for (int it = 0; it < (full ? 20 : 8); ++it) {
                    RatMatrix x = rng.random_symmetric(n, 4, 2);
                    auto m = sys.minors_at(x);
                    RatMatrix gram = sys.phi_c.eval(x);
                    Rational pd1 = matrix_sigma(x, d + 1), pd = matrix_sigma(x, d);
                    Rational wtm = 0;
                    for (std::size_t p = 0; p < m.size(); ++p) wtm += sys.w(p, 0) * m[p];
                    if (wtm != pd) return false;
                    for (std::size_t p = 0; p < m.size(); ++p) {
                        Rational lhs = 0;
                        for (std::size_t q = 0; q < m.size(); ++q) lhs += gram(p, q) * m[q];
                        if (lhs != sys.w(p, 0) * pd1) return false;
                    }
                }
            }
        return true;
    }});

    checks.push_back({"C19", "newton certificates verify end to end", [](std::uint64_t, bool full) {
        std::vector<std::pair<int, int>> cases{{2, 1}, {3, 1}};
        if (full) cases.push_back({3, 2});
        for (auto [n, d] : cases) {
            CalibratedSystem sys = calibrate_identity(n, d);
            Certificate cert = newton_matrix_certificate(sys);
            sos_decompose(cert);
            if (!certificate_error(cert).empty()) return false;
            Certificate cls = newton_classical_certificate(sys);
            if (!certificate_error(cls).empty()) return false;
        }
        return true;
    }});

    checks.push_back({"C20", "Bezout PSD iff interlacing", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 20);
        int want = full ? 200 : 60;
        for (int it = 0; it < want; ++it) {
            int d = 2 + int(rng.next_below(4));
            std::vector<Rational> alpha(d), beta(d - 1);
            Rational cur = rng.rational(4, 2);
            for (int i = 0; i < d; ++i) {
                alpha[i] = cur;
                cur += abs(rng.rational(3, 2));
            }
            bool mk = rng.next_below(2);
            for (int i = 0; i < d - 1; ++i)
                beta[i] = mk ? alpha[i] + rat(long(rng.next_below(5)), 4) * (alpha[i + 1] - alpha[i])
                             : rng.rational(8, 2);
            UniPoly f = UniPoly::constant(1), g = UniPoly::constant(1);
            for (int i = 0; i < d; ++i) f = f * UniPoly({-alpha[i], Rational(1)});
            for (int i = 0; i < d - 1; ++i) g = g * UniPoly({-beta[i], Rational(1)});
            if (psd_check(bezout_matrix(f, g)) != roots_interlace(alpha, beta)) return false;
        }
        return true;
    }});

    checks.push_back({"C21", "Wronskian nonnegative for cone directions", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 21);
        HyperbolicInstance h = sigma_instance(full ? 5 : 4, 3);
        std::vector<Rational> a(h.nvars);
        for (int i = 0; i < h.nvars; ++i) a[i] = Rational(i + 1);
        for (int it = 0; it < (full ? 200 : 60); ++it) {
            auto x = rng.rational_vector(h.nvars, 6, 3);
            if (wronskian_eval(h, h.e, a, x) < 0) return false;
        }
        return true;
    }});

    checks.push_back({"C22", "matrix sigma: char poly route equals minor sums", [](std::uint64_t seed, bool full) {
        Rng rng = Rng::derive(seed, 22);
        for (int it = 0; it < (full ? 200 : 60); ++it) {
            int n = 1 + int(rng.next_below(5));
            RatMatrix x = rng.random_symmetric(n, 4, 2);
            for (int d = 0; d <= n; ++d)
                if (matrix_sigma(x, d) != matrix_sigma_minors(x, d)) return false;
        }
        return true;
    }});

    return checks;
}

struct SuiteResult {
    std::string report;       // byte-stable given the seed
    std::string timing;       // wall-clock notes, not part of the report
    bool all_passed = true;
};

inline SuiteResult run_suite(const std::string& level, std::uint64_t seed) {
    bool full = (level == "full");
    auto checks = suite_checks();
    std::vector<int> verdict(checks.size(), -1);
    std::vector<double> secs(checks.size(), 0.0);

    unsigned workers = std::thread::hardware_concurrency();
    if (const char* env = std::getenv("HYPERCONE_THREADS")) {
        long cap = std::atol(env);
        if (cap >= 1) workers = static_cast<unsigned>(cap);
    }
    if (workers < 1) workers = 1;
    workers = std::min<unsigned>(workers, checks.size());

    std::atomic<std::size_t> next{0};
    auto worker = [&]() {
        while (true) {
            std::size_t i = next.fetch_add(1);
            if (i >= checks.size()) break;
            auto t0 = std::chrono::steady_clock::now();
            bool ok = false;
            try {
                ok = checks[i].run(seed, full);
            } catch (...) {
                ok = false;
            }
            auto t1 = std::chrono::steady_clock::now();
            verdict[i] = ok ? 1 : 0;
            secs[i] = std::chrono::duration<double>(t1 - t0).count();
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < workers; ++t) pool.emplace_back(worker);
    for (auto& t : pool) t.join();

    SuiteResult res;
    std::ostringstream rep, tim;
    rep << "suite level=" << level << " seed=" << seed << "\n";
    for (std::size_t i = 0; i < checks.size(); ++i) {
        bool ok = verdict[i] == 1;
        res.all_passed = res.all_passed && ok;
        rep << checks[i].id << " " << (ok ? "pass" : "FAIL") << " " << checks[i].name << "\n";
        tim << checks[i].id << " " << secs[i] << "s\n";
    }
    rep << (res.all_passed ? "ALL PASS" : "FAILURES PRESENT") << "\n";
    res.report = rep.str();
    res.timing = tim.str();
    return res;
}

}  // namespace hypercone
