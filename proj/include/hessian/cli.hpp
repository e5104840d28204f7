#pragma once

#include <atomic>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <thread>

#include <CLI11.hpp>
#include <json.hpp>

#include "hessian/bsd.hpp"
#include "hessian/oracle.hpp"

namespace hessian {

using ordered_json = nlohmann::ordered_json;

struct RunConfig {
    u64 p = 0;
    u64 k = 1;
    u64 d = 0;
    u64 dmin = 2;
    u64 dmax = 0;
    u64 nmax = 3;
    u64 budget = 0;  // 0 = library default
    u64 threads = 1;
    std::string format = "json";
    std::string cache_dir;
    std::string out;
};

namespace clidetail {

inline std::string fmt_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline ordered_json lpoly_json(const LPolynomial& L) {
    ordered_json j;
    j["schema"] = "hessian-lfunc/1";
    j["q"] = L.q;
    j["d"] = L.d;
    j["degree"] = L.degree();
    ordered_json coeffs = ordered_json::array();
    for (const auto& c : L.coeffs) coeffs.push_back(c.get_str());
    j["coefficients"] = coeffs;
    ordered_json factors = ordered_json::array();
    for (const auto& f : L.factors) {
        ordered_json jf;
        jf["m"] = f.rep;
        jf["len"] = f.length;
        jf["v_member"] = f.v_member;
        factors.push_back(jf);
    }
    j["factors"] = factors;
    j["fe_sign"] = functional_equation_check(L);
    return j;
}

inline std::string lpoly_csv(const LPolynomial& L) {
    std::ostringstream os;
    os << L.q << "," << L.d << "," << L.degree();
    for (const auto& c : L.coeffs) os << "," << c.get_str();
    os << "\n";
    return os.str();
}

inline ordered_json bsd_json(const BsdReport& r) {
    ordered_json j;
    j["schema"] = "hessian-lfunc/1";
    j["q"] = r.q;
    j["d"] = r.d;
    j["rank"] = r.rank;
    j["special_value_num"] = r.special.get_num().get_str();
    j["special_value_den"] = r.special.get_den().get_str();
    j["H_exp"] = r.height_exponent;
    j["tamagawa"] = r.tamagawa;
    j["torsion"] = r.torsion_order;
    j["sha_reg_num"] = r.sha_reg.get_num().get_str();
    j["sha_reg_den"] = r.sha_reg.get_den().get_str();
    j["bs_ratio"] = fmt_double(r.bs_ratio);
    j["spval_ratio"] = fmt_double(r.spval_ratio);
    j["fe_sign"] = r.fe_sign;
    return j;
}

inline std::string scan_header() {
    return "q,d,deg,rank,L*_num,L*_den,H_exp,tamagawa,sha_reg_num,sha_reg_den,bs_ratio,spval_ratio,fe_sign\n";
}

inline std::string scan_row(const BsdReport& r, u64 deg) {
    std::ostringstream os;
    os << r.q << "," << r.d << "," << deg << "," << r.rank << "," << r.special.get_num().get_str() << ","
       << r.special.get_den().get_str() << "," << r.height_exponent << "," << r.tamagawa << ","
       << r.sha_reg.get_num().get_str() << "," << r.sha_reg.get_den().get_str() << "," << fmt_double(r.bs_ratio)
       << "," << fmt_double(r.spval_ratio) << "," << r.fe_sign << "\n";
    return os.str();
}

inline ordered_json invariants_json(const CurveInvariants& ci) {
    ordered_json j;
    j["schema"] = "hessian-lfunc/1";
    j["q"] = ci.q;
    j["d"] = ci.d;
    j["degN"] = ci.conductor_degree;
    j["disc_degree"] = ci.disc_degree;
    j["H_exp"] = ci.height_exponent;
    j["tamagawa"] = ci.tamagawa;
    j["torsion"] = ci.torsion_order;
    ordered_json rows = ordered_json::array();
    for (const auto& row : ci.reduction_table) {
        ordered_json rr;
        rr["place"] = row.place;
        rr["type"] = row.kodaira;
        rr["ord_disc"] = row.ord_disc;
        rr["ord_cond"] = row.ord_cond;
        rr["c_v"] = row.local_tamagawa;
        rr["deg"] = row.deg_total;
        rows.push_back(rr);
    }
    j["reduction_table"] = rows;
    return j;
}

struct OutputSink {
    std::ostream& fallback;
    std::string path;
    void write(const std::string& s) const {
        if (path.empty()) {
            fallback << s;
            return;
        }
        std::ofstream f(path, std::ios::binary);
        f << s;
    }
};

}  // namespace clidetail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    using namespace clidetail;
    CLI::App app{"L-functions, special values and Brauer-Siegel ratios of the Hessian curves y^2 + xy - t^d y = x^3 over F_q(t)"};
    app.require_subcommand(1);
    RunConfig cfg;

    auto add_common = [&](CLI::App* sub, bool need_d) {
        sub->add_option("--p", cfg.p, "characteristic (prime, >= 5)")->required();
        sub->add_option("--k", cfg.k, "q = p^k (default 1)");
        if (need_d) sub->add_option("--d", cfg.d, "curve parameter d")->required();
        sub->add_option("--budget", cfg.budget, "evaluation budget for brute-force scans");
        sub->add_option("--format", cfg.format, "json or csv");
        sub->add_option("--cache-dir", cfg.cache_dir, "directory for dlog table caches");
        sub->add_option("--threads", cfg.threads, "worker threads for scans");
        sub->add_option("--out", cfg.out, "write output to file instead of stdout");
    };

    CLI::App* c_lfun = app.add_subcommand("lfun", "L-polynomial of E_d");
    add_common(c_lfun, true);
    CLI::App* c_verify = app.add_subcommand("verify", "compare L power sums against point-count trace sums");
    add_common(c_verify, true);
    c_verify->add_option("--nmax", cfg.nmax, "check S_1..S_nmax");
    CLI::App* c_bsd = app.add_subcommand("bsd", "rank, special value, |Sha|*Reg and Brauer-Siegel ratio");
    add_common(c_bsd, true);
    CLI::App* c_scan = app.add_subcommand("scan", "BSD reports for a range of d");
    add_common(c_scan, false);
    c_scan->add_option("--dmin", cfg.dmin, "first d (default 2)");
    c_scan->add_option("--dmax", cfg.dmax, "last d")->required();
    CLI::App* c_inv = app.add_subcommand("invariants", "closed-form curve invariants");
    add_common(c_inv, true);
    CLI::App* c_ident = app.add_subcommand("identity-check", "exhaustive character-sum identity checks over F_q");
    add_common(c_ident, false);

    std::vector<std::string> rargs(args.rbegin(), args.rend());
    try {
        app.parse(rargs);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) {  // --help
            out << app.help();
            return 0;
        }
        err << e.what() << "\n";
        return 2;
    }

    if (const char* env = std::getenv("HESSIAN_CACHE")) {
        if (*env) cfg.cache_dir = env;
    }
    FieldCacheConfig::dir() = cfg.cache_dir;

    OutputSink sink{out, cfg.out};
    try {
        PrimePower pp(cfg.p, cfg.k);

        if (c_lfun->parsed()) {
            LPolynomial L = l_function(pp, cfg.d);
            sink.write(cfg.format == "csv" ? lpoly_csv(L) : lpoly_json(L).dump(2) + "\n");
            return 0;
        }

        if (c_verify->parsed()) {
            LPolynomial L = l_function(pp, cfg.d);
            auto sums = power_sums(L, cfg.nmax);
            std::ostringstream os;
            bool all_ok = true;
            os << "n,lfun_S_n,oracle_S_n,match\n";
            for (u64 n = 1; n <= cfg.nmax; ++n) {
                TraceSum ts = trace_sum(pp, cfg.d, n, cfg.budget);
                bool ok = (ts.value == sums[n]);
                all_ok = all_ok && ok;
                os << n << "," << sums[n].get_str() << "," << ts.value.get_str() << "," << (ok ? "PASS" : "FAIL")
                   << "\n";
            }
            os << (all_ok ? "PASS" : "FAIL") << "\n";
            sink.write(os.str());
            return all_ok ? 0 : 4;
        }

        if (c_bsd->parsed()) {
            BsdReport r = bsd_product(pp, cfg.d);
            if (cfg.format == "csv") {
                sink.write(scan_header() + scan_row(r, l_function(pp, cfg.d).degree()));
            } else {
                sink.write(bsd_json(r).dump(2) + "\n");
            }
            return 0;
        }

        if (c_scan->parsed()) {
            if (cfg.dmax < cfg.dmin) throw input_error("scan: dmax < dmin");
            std::vector<u64> ds;
            for (u64 d = cfg.dmin; d <= cfg.dmax; ++d)
                if (std::gcd(d, pp.q) == 1) ds.push_back(d);
            std::vector<std::string> rows(ds.size());
            std::vector<std::string> skips(ds.size());
            std::atomic<std::size_t> next{0};
            std::exception_ptr worker_error;
            std::mutex error_mtx;
            auto worker = [&]() {
                for (;;) {
                    std::size_t i = next.fetch_add(1);
                    if (i >= ds.size()) return;
                    try {
                        BsdReport r = bsd_product(pp, ds[i]);
                        rows[i] = scan_row(r, l_function(pp, ds[i]).degree());
                    } catch (const budget_error& e) {
                        skips[i] = "skip d=" + std::to_string(ds[i]) + ": " + e.what();
                    } catch (...) {
                        std::lock_guard<std::mutex> lock(error_mtx);
                        if (!worker_error) worker_error = std::current_exception();
                    }
                }
            };
            u64 nt = std::max<u64>(1, cfg.threads);
            std::vector<std::thread> pool;
            for (u64 t = 1; t < nt; ++t) pool.emplace_back(worker);
            worker();
            for (auto& th : pool) th.join();
            if (worker_error) std::rethrow_exception(worker_error);
            std::string body = scan_header();
            for (const auto& r : rows) body += r;
            sink.write(body);
            for (const auto& s : skips)
                if (!s.empty()) err << s << "\n";
            return 0;
        }

        if (c_inv->parsed()) {
            CurveInvariants ci = invariants(pp, cfg.d);
            if (cfg.format == "csv") {
                std::ostringstream os;
                os << "q,d,degN,disc_degree,H_exp,tamagawa,torsion\n"
                   << ci.q << "," << ci.d << "," << ci.conductor_degree << "," << ci.disc_degree << ","
                   << ci.height_exponent << "," << ci.tamagawa << "," << ci.torsion_order << "\n";
                sink.write(os.str());
            } else {
                sink.write(invariants_json(ci).dump(2) + "\n");
            }
            return 0;
        }

        if (c_ident->parsed()) {
            const FieldCtx& F = make_field(pp, 1, cfg.cache_dir);
            IdentityReport rep = charsum_identity_check(F);
            std::ostringstream os;
            os << rep.checked << " identities checked, " << rep.failures << " failures\n";
            for (const auto& s : rep.failure_notes) os << s << "\n";
            sink.write(os.str());
            return rep.failures == 0 ? 0 : 4;
        }
    } catch (const input_error& e) {
        err << e.what() << "\n";
        return 2;
    } catch (const budget_error& e) {
        err << e.what() << "\n";
        return 3;
    } catch (const internal_error& e) {
        err << e.what() << "\n";
        return 4;
    }
    return 2;
}

}  // namespace hessian
