/**
 * Command dispatch for the verification tool: each command runs a family of
 * checks against one orbit and appends records to a deterministic report.
 * Identical inputs produce byte-identical reports; no clocks, paths or
 * addresses leak in.
 */

#ifndef WEIGHTLAB_RUNNER_HPP
#define WEIGHTLAB_RUNNER_HPP

#include <weightlab/complexes.hpp>
#include <weightlab/orbitspec.hpp>
#include <weightlab/psi.hpp>

#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace weightlab {

inline const char* kToolVersion = "0.1.0";

struct RunOptions {
    std::optional<Mask> subset;     // --subset
    std::optional<Mask> k_subset;   // -K
    std::optional<int> r_level;     // --r
    std::vector<int> multiplicities;  // --multiplicities (empty: all ones)
    PsiMode mode = PsiMode::cokernel;
    std::optional<int> p_max;
    std::uint64_t seed = 2024;
    bool corrupt_hook = false;  // negative-control fault injection
};

struct Report {
    Json doc;
    int checks = 0;
    int failed = 0;

    void begin(const std::string& command, const std::string& digest)
    {
        doc = Json::object();
        doc["tool"] = "weightlab";
        doc["version"] = kToolVersion;
        doc["command"] = command;
        doc["orbit_digest"] = digest;
        doc["checks"] = Json::array();
    }

    void add(const std::string& name, const Json& params, bool pass,
             const std::string& details)
    {
        Json rec = Json::object();
        rec["name"] = name;
        rec["params"] = params;
        rec["status"] = pass ? "pass" : "fail";
        rec["details"] = details;
        doc["checks"].push_back(rec);
        ++checks;
        if (!pass)
            ++failed;
    }

    void add(const std::string& prefix, const Json& params, const CheckReport& rep)
    {
        for (const auto& item : rep.items)
            add(prefix.empty() ? item.name : prefix + "." + item.name, params, item.pass,
                item.detail);
    }

    void finish()
    {
        Json summary = Json::object();
        summary["checks"] = checks;
        summary["failed"] = failed;
        doc["summary"] = summary;
    }

    bool ok() const { return failed == 0; }
};

namespace detail {

inline Json params_json(const std::map<std::string, std::string>& kv)
{
    Json p = Json::object();
    for (const auto& [k, v] : kv)
        p[k] = v;
    return p;
}

inline std::string graded_dims_str(const IncFiltration& w)
{
    std::ostringstream os;
    os << "{";
    bool first = true;
    for (int k = w.lowest_index(); k <= w.highest_index(); ++k) {
        int d = graded(w, k).dim();
        if (d == 0)
            continue;
        if (!first)
            os << ", ";
        os << k << ":" << d;
        first = false;
    }
    os << "}";
    return os.str();
}

inline std::vector<int> default_r_window(const NilpotentOrbit& orbit)
{
    int i0 = support_radius(orbit);
    std::vector<int> out;
    for (int r = -(i0 + 2); r <= i0 + 2; ++r)
        out.push_back(r);
    return out;
}

}  // namespace detail

/** weight: axioms, graded symmetry and lambda-independence for every W^J. */
inline void run_weight(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    for (Mask j : enumerate_subsets(orbit.index_set())) {
        if (j == 0)
            continue;
        if (opt.subset && j != *opt.subset)
            continue;
        Json params = detail::params_json({{"subset", mask_label(j)}});
        IncFiltration w = orbit.w_multi(j);
        if (opt.corrupt_hook)
            w = w.shift(1);
        WeightReport wr = verify_weight_axioms(orbit.sum_over(j), w);
        rep.add("weight.axioms", params, wr.ok, detail::graded_dims_str(w));
        bool sym = true;
        for (int k = 1; k <= w.highest_index() + 1; ++k)
            if (graded(w, k).dim() != graded(w, -k).dim())
                sym = false;
        rep.add("weight.graded_symmetry", params, sym, detail::graded_dims_str(w));
        rep.add("weight.lambda_independence", params,
                lambda_independence_check(orbit, j, 5, opt.seed), "5 random tuples");
    }
}

inline void run_keylemma(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    Mask a = opt.subset.value_or(orbit.index_set());
    Json params = detail::params_json({{"A", mask_label(a)}});
    rep.add("", params, key_lemma_check(orbit, a, 1, 10, opt.seed));
}

/** omega: resolution, exhaustion, Euler bookkeeping, Hodge table. */
inline void run_omega(Report& rep, const NilpotentOrbit& orbit, const RunOptions&)
{
    Json params = Json::object();
    WeightLevelCache cache(orbit);
    CochainComplex omega = omega_star(orbit);
    CochainComplex kz = koszul(orbit);
    std::map<int, int> po = omega.profile(), pk = kz.profile();
    rep.add("omega.resolves_koszul", params, po == pk,
            "omega " + profile_str(po) + " vs koszul " + profile_str(pk));

    int i0 = support_radius(orbit);
    CochainComplex top = omega_weight(orbit, i0 + 1, &cache);
    bool exhaust_top = true;
    for (int d = omega.lo; d <= omega.hi(); ++d)
        if (top.dim_at(d) != omega.dim_at(d))
            exhaust_top = false;
    CochainComplex bot = omega_weight(orbit, -i0 - 1, &cache);
    bool exhaust_bot = true;
    for (int d = bot.lo; d <= bot.hi(); ++d)
        if (bot.dim_at(d) != 0)
            exhaust_bot = false;
    rep.add("omega.exhaustion", params, exhaust_top && exhaust_bot,
            "support radius " + std::to_string(i0));

    int chi = omega.euler_characteristic();
    int chi_sum = 0;
    for (int r = -i0 - 1; r <= i0 + 1; ++r)
        chi_sum += graded_weight(orbit, r, &cache).euler_characteristic();
    rep.add("omega.euler", params, chi == chi_sum,
            "chi " + std::to_string(chi) + " vs graded sum " + std::to_string(chi_sum));

    if (orbit.hodge()) {
        auto table = hodge_bigraded_profile(orbit, &cache);
        std::ostringstream os;
        for (const auto& [key, v] : table)
            os << "(k=" << std::get<0>(key) << ",d=" << std::get<1>(key)
               << ",p=" << std::get<2>(key) << "):" << v << " ";
        rep.add("omega.hodge_bigraded", params, true, os.str());
    }
}

inline void run_graded(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    WeightLevelCache cache(orbit);
    std::vector<int> rs =
        opt.r_level ? std::vector<int>{*opt.r_level} : detail::default_r_window(orbit);
    for (int r : rs) {
        Json params = detail::params_json({{"r", std::to_string(r)}});
        CochainComplex gr = graded_weight(orbit, r, &cache);
        std::map<int, int> prof = gr.profile();
        if (r == 0)
            rep.add("graded.gr0_acyclic", params, prof.empty(), profile_str(prof));
        else
            rep.add("graded.profile", params, true, profile_str(prof));
    }
}

inline void run_purity(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    Mask k = opt.k_subset.value_or(orbit.index_set());
    std::vector<int> rs =
        opt.r_level ? std::vector<int>{*opt.r_level} : detail::default_r_window(orbit);
    for (int r : rs) {
        Json params = detail::params_json({{"K", mask_label(k)}, {"r", std::to_string(r)}});
        rep.add("", params, purity_check(orbit, k, r));
        if (r != 0) {
            TEmbedding emb = embed_t_complex(orbit, k, r);
            std::string why;
            bool ok = emb.map.cohomology_bijective(emb.source, emb.target, &why);
            rep.add("purity.t_embedding", params, ok,
                    ok ? ("|T| = " + std::to_string(emb.t_indices.size()) + ", "
                          + profile_str(emb.source.profile()))
                       : why);
        }
    }
}

inline void run_elementary(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    Mask k = opt.k_subset.value_or(orbit.index_set());
    std::vector<int> elems = mask_elements(k);
    std::vector<std::vector<int>> boxes;
    std::vector<std::vector<int>> ranges;
    for (int i : elems) {
        const IncFiltration& w = orbit.w_multi(Mask(1) << i);
        std::vector<int> range;
        for (int v = w.lowest_index() - 1; v <= w.highest_index() + 3; ++v)
            range.push_back(v);
        ranges.push_back(range);
    }
    std::vector<int> cur(elems.size());
    std::function<void(std::size_t)> recur = [&](std::size_t pos) {
        if (pos == elems.size()) {
            boxes.push_back(cur);
            return;
        }
        for (int v : ranges[pos]) {
            cur[pos] = v;
            recur(pos + 1);
        }
    };
    recur(0);
    int failures = 0;
    int total = 0;
    std::string first_fail;
    for (const auto& m : boxes) {
        CochainComplex e = elementary(orbit, k, m);
        auto [deg, dim] = elementary_cohomology_expected(orbit, k, m);
        std::map<int, int> expect;
        if (dim > 0)
            expect[deg] = dim;
        bool pass = e.profile() == expect;
        bool has_one = false;
        for (int mi : m)
            if (mi == 1)
                has_one = true;
        if (has_one && !e.profile().empty())
            pass = false;
        ++total;
        if (!pass && failures == 0) {
            std::ostringstream os;
            os << "m=(";
            for (int mi : m)
                os << mi << ",";
            os << ") got " << profile_str(e.profile()) << " expected " << profile_str(expect);
            first_fail = os.str();
        }
        if (!pass)
            ++failures;
    }
    Json params = detail::params_json({{"K", mask_label(k)}});
    rep.add("elementary.profiles", params, failures == 0,
            failures == 0 ? std::to_string(total) + " index vectors" : first_fail);
    (void)opt;
}

inline void run_decompose(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    WeightLevelCache cache(orbit);
    std::vector<int> rs =
        opt.r_level ? std::vector<int>{*opt.r_level} : detail::default_r_window(orbit);
    for (int r : rs) {
        Json params = detail::params_json({{"r", std::to_string(r)}});
        rep.add("", params, decomposition_check(orbit, r, &cache));
    }
    // Residual-orbit formula on the proper subsets.
    for (Mask k : enumerate_subsets(orbit.index_set())) {
        if (k == 0 || k == orbit.index_set())
            continue;
        for (int r : rs) {
            if (r == 0)
                continue;
            Json params =
                detail::params_json({{"K", mask_label(k)}, {"r", std::to_string(r)}});
            rep.add("", params, w_minus1_fiber_check(orbit, k, r));
        }
    }
}

inline void run_ic(Report& rep, const NilpotentOrbit& orbit, const RunOptions&)
{
    WeightLevelCache cache(orbit);
    rep.add("", Json::object(), kk_check(orbit, &cache));
}

inline void run_psi_build(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    std::vector<int> mults = opt.multiplicities.empty()
                                 ? std::vector<int>(orbit.index_count(), 1)
                                 : opt.multiplicities;
    Json params = detail::params_json(
        {{"mode", psi_mode_name(opt.mode)},
         {"p_max", opt.p_max ? std::to_string(*opt.p_max) : std::string("auto")}});
    PsiComplex psi = build_psi(orbit, mults, opt.p_max.value_or(-1), opt.mode);
    std::map<int, int> prof = psi.total_profile();
    PsiComplex next(orbit, mults, psi.p_max() + 1, opt.mode);
    bool stable = next.total_profile() == prof;
    rep.add("psi.stabilization", params, stable,
            "profile " + profile_str(prof) + " at q = " + std::to_string(psi.p_max()));
}

inline void run_psi_monodromy(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    std::vector<int> mults = opt.multiplicities.empty()
                                 ? std::vector<int>(orbit.index_count(), 1)
                                 : opt.multiplicities;
    Json params = detail::params_json({{"mode", psi_mode_name(opt.mode)}});
    PsiComplex psi = build_psi(orbit, mults, opt.p_max.value_or(-1), opt.mode);
    rep.add("", params, monodromy_weight_check(psi));
    CheckReport windows;
    int i0 = psi.support_radius();
    for (int r = -i0 - 1; r <= i0 + 1; ++r) {
        psi_graded(psi, r, &windows);
        rep.add("", params, psi_decomposition_check(psi, r));
    }
    rep.add("", params, windows);
    rep.add("", params,
            ker_coker_bridge_check(orbit, mults, opt.mode, psi.p_max()));
}

inline void run_psi_acyclic(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    std::vector<int> mults = opt.multiplicities.empty()
                                 ? std::vector<int>(orbit.index_count(), 1)
                                 : opt.multiplicities;
    int i0 = support_radius(orbit);
    for (Mask k : enumerate_subsets(orbit.index_set())) {
        if (k == 0)
            continue;
        if (opt.k_subset && k != *opt.k_subset)
            continue;
        for (int i = 1; i <= i0; ++i) {
            Json params =
                detail::params_json({{"K", mask_label(k)}, {"i", std::to_string(i)}});
            CochainComplex a = a_complex(orbit, mults, k, i);
            rep.add("psi.a_acyclic", params, a.acyclic(), profile_str(a.profile()));
        }
    }
}

/** Gate for the heavyweight psi commands inside `all` and sweeps. */
inline bool psi_feasible(const NilpotentOrbit& orbit)
{
    return orbit.index_count() <= 2 && orbit.dim() <= 6;
}

inline void run_all(Report& rep, const NilpotentOrbit& orbit, const RunOptions& opt)
{
    run_weight(rep, orbit, opt);
    run_keylemma(rep, orbit, opt);
    run_omega(rep, orbit, opt);
    run_graded(rep, orbit, opt);
    run_purity(rep, orbit, opt);
    run_elementary(rep, orbit, opt);
    run_decompose(rep, orbit, opt);
    run_ic(rep, orbit, opt);
    run_psi_acyclic(rep, orbit, opt);
    if (psi_feasible(orbit)) {
        run_psi_build(rep, orbit, opt);
        run_psi_monodromy(rep, orbit, opt);
    }
}

/**
 * Dispatch one command against one orbit.  Unknown commands raise
 * input_error (usage is the caller's concern).
 */
inline Report run_command(const std::string& command, const NilpotentOrbit& orbit,
                          const RunOptions& opt)
{
    Report rep;
    rep.begin(command, orbit_digest(orbit));
    if (command == "weight")
        run_weight(rep, orbit, opt);
    else if (command == "keylemma")
        run_keylemma(rep, orbit, opt);
    else if (command == "omega")
        run_omega(rep, orbit, opt);
    else if (command == "graded")
        run_graded(rep, orbit, opt);
    else if (command == "purity")
        run_purity(rep, orbit, opt);
    else if (command == "elementary")
        run_elementary(rep, orbit, opt);
    else if (command == "decompose")
        run_decompose(rep, orbit, opt);
    else if (command == "ic")
        run_ic(rep, orbit, opt);
    else if (command == "psi-build")
        run_psi_build(rep, orbit, opt);
    else if (command == "psi-monodromy")
        run_psi_monodromy(rep, orbit, opt);
    else if (command == "psi-acyclic")
        run_psi_acyclic(rep, orbit, opt);
    else if (command == "all")
        run_all(rep, orbit, opt);
    else
        throw input_error("unknown command: " + command);
    rep.finish();
    return rep;
}

/** The generated corpus: Jordan types, tensor orbits and conjugated copies. */
inline std::vector<std::pair<std::string, NilpotentOrbit>> sweep_corpus(std::uint64_t seed)
{
    std::vector<std::pair<std::string, NilpotentOrbit>> corpus;
    corpus.emplace_back("jordan[2]", gen_jordan({2}));
    corpus.emplace_back("jordan[3]", gen_jordan({3}));
    corpus.emplace_back("jordan[2,1]", gen_jordan({2, 1}));
    corpus.emplace_back("tensor[2,2]", gen_sl2_tensor({2, 2}));
    corpus.emplace_back("tensor[2,3]", gen_sl2_tensor({2, 3}));
    corpus.emplace_back("tensor[2,2,2]", gen_sl2_tensor({2, 2, 2}));
    std::mt19937_64 rng(seed);
    auto random_g = [&rng](int n) {
        std::uniform_int_distribution<int> d(-2, 2);
        for (;;) {
            Mat g(n, n);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    g(i, j) = d(rng);
            if (rank_of(g) == n)
                return g;
        }
    };
    corpus.emplace_back("conjugated(jordan[2])",
                        gen_conjugated(gen_jordan({2}), random_g(2)));
    corpus.emplace_back("conjugated(tensor[2,2])",
                        gen_conjugated(gen_sl2_tensor({2, 2}), random_g(4)));
    return corpus;
}

/** Run `all` over the generated corpus and aggregate one report. */
inline Report sweep(const RunOptions& opt)
{
    for (const auto& [name, orbit] : sweep_corpus(opt.seed)) {
        if (orbit.dim() > 32)
            throw resource_error("sweep: orbit " + name + " exceeds the dimension bound");
        if (orbit.index_count() > 3)
            throw resource_error("sweep: orbit " + name + " exceeds the index bound");
    }
    Report rep;
    rep.begin("sweep", "corpus");
    for (const auto& [name, orbit] : sweep_corpus(opt.seed)) {
        Report sub;
        sub.begin("all", orbit_digest(orbit));
        run_all(sub, orbit, opt);
        sub.finish();
        for (const auto& rec : sub.doc["checks"]) {
            Json merged = rec;
            merged["orbit"] = name;
            rep.doc["checks"].push_back(merged);
            ++rep.checks;
            if (rec["status"] == "fail")
                ++rep.failed;
        }
    }
    rep.finish();
    return rep;
}

}  // namespace weightlab

#endif  // WEIGHTLAB_RUNNER_HPP
