#include "atd/census.hpp"

#include "atd/canonical.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <exception>
#include <map>
#include <mutex>
#include <set>
#include <thread>

namespace atd {

namespace {

// Runs fn(i) for i < n on up to jobs threads; rethrows the first failure.
void parallel_for(std::size_t n, std::size_t jobs, const std::function<void(std::size_t)> &fn)
{
    jobs = std::max<std::size_t>(1, std::min(jobs, n));
    if (jobs == 1) {
        for (std::size_t i = 0; i < n; ++i)
            fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr error;
    std::mutex error_mutex;
    auto worker = [&] {
        for (std::size_t i; (i = next++) < n;) {
            try {
                fn(i);
            } catch (...) {
                std::lock_guard lock(error_mutex);
                if (!error)
                    error = std::current_exception();
                next = n;
            }
        }
    };
    std::vector<std::thread> pool;
    for (std::size_t j = 0; j < jobs; ++j)
        pool.emplace_back(worker);
    for (auto &t : pool)
        t.join();
    if (error)
        std::rethrow_exception(error);
}

std::vector<GwParams> gw_of_order(std::size_t order)
{
    std::vector<GwParams> out;
    for (const auto &p : gw_parameters(order))
        if (p.vertex_count() == order)
            out.push_back(p);
    return out;
}

std::string gw_label(const GwParams &p)
{
    return "(" + std::to_string(p.n) + "," + std::to_string(p.r) + ")";
}

std::size_t pow2(std::size_t s) { return std::size_t(1) << s; }

} // namespace

std::size_t census_t(std::size_t m)
{
    std::size_t t = 0;
    for (std::size_t k = 1; k < 60 && k * (std::size_t(4) << k) < m; ++k)
        t = k;
    return t;
}

std::vector<std::size_t> default_s_range(std::size_t m)
{
    std::vector<std::size_t> out;
    for (std::size_t s = 1; s <= std::max<std::size_t>(4, census_t(m)); ++s)
        out.push_back(s);
    return out;
}

std::string census_name(const std::string &prefix, std::size_t order, std::size_t serial, char sep)
{
    return prefix + "[" + std::to_string(order) + sep + std::to_string(serial) + "]";
}

Verification verify_2atd(const Digraph &d) { return verify_2atd(d, automorphism_group(d)); }

Verification verify_2atd(const Digraph &d, const PermutationGroup &aut)
{
    if (!d.is_irreflexive())
        return {false, "has a loop"};
    if (!d.is_asymmetric())
        return {false, "not asymmetric"};
    for (Vertex v = 0; v < d.order(); ++v)
        if (d.out_valence(v) != 2 || d.in_valence(v) != 2)
            return {false, "vertex " + std::to_string(v) + " does not have in- and out-valence 2"};
    if (!is_connected(d))
        return {false, "not connected"};
    if (aut.degree() != d.order())
        return {false, "group degree differs from the order"};
    std::size_t classes = 0;
    arc_orbits(d, aut.generators(), &classes);
    if (classes != 1)
        return {false, "automorphisms have " + std::to_string(classes) + " arc orbits"};
    return {true, {}};
}

std::optional<GwParams> identify_gw(const Digraph &d)
{
    auto candidates = gw_of_order(d.order());
    if (candidates.empty())
        return std::nullopt;
    auto own = canonical_form(d).bytes;
    for (const auto &p : candidates)
        if (canonical_form(generalised_wreath(p.n, p.r)).bytes == own)
            return p;
    return std::nullopt;
}

std::optional<Digraph> census_candidate(const std::vector<Permutation> &images, std::size_t s)
{
    if (images.size() != s + 1)
        throw std::invalid_argument("expected s + 1 generator images");
    const std::size_t degree = images.front().degree();
    PermutationGroup g(degree, images);
    PermutationGroup h(degree, std::vector<Permutation>(images.begin(), images.begin() + s));
    if (h.order() != BigInt(pow2(s)))
        return std::nullopt;
    try {
        return coset_digraph(g, h, images.back()).digraph;
    } catch (const std::invalid_argument &) {
        // not core-free, or g^-1 in HgH
        return std::nullopt;
    }
}

namespace {

std::optional<std::vector<ConCycle>> consistent_profile(const Digraph &und, const PermutationGroup &aut)
{
    try {
        std::vector<ConCycle> out;
        for (const auto &o : consistent_cycles(und, aut))
            out.push_back({o.length, o.symmetric});
        std::sort(out.begin(), out.end(), [](const ConCycle &a, const ConCycle &b) {
            return std::tie(a.length, a.symmetric) < std::tie(b.length, b.symmetric);
        });
        return out;
    } catch (const EnumerationCapExceeded &) {
        return std::nullopt;
    }
}

} // namespace

void derive_ghat_hat(std::vector<AtdEntry> &entries, std::vector<GhatRecord> &ghat, std::vector<HatRecord> &hat,
                     std::size_t jobs)
{
    ghat.clear();
    hat.clear();
    const std::size_t n = entries.size();
    std::vector<Digraph> unds(n);
    std::vector<std::vector<std::uint8_t>> und_certs(n);
    parallel_for(n, jobs, [&](std::size_t i) {
        unds[i] = underlying_graph(entries[i].digraph);
        und_certs[i] = canonical_form(unds[i]).bytes;
    });

    // underlying graphs of generalised wreath digraphs, first parameters win
    std::map<std::vector<std::uint8_t>, GwParams> gw_und;
    std::set<std::size_t> orders;
    for (const auto &e : entries)
        orders.insert(e.digraph.order());
    for (auto order : orders)
        for (const auto &p : gw_of_order(order))
            gw_und.emplace(canonical_form(underlying_graph(generalised_wreath(p.n, p.r))).bytes, p);

    // one group per underlying graph, ordered by (order, certificate)
    std::map<std::pair<std::size_t, std::vector<std::uint8_t>>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < n; ++i)
        groups[{entries[i].digraph.order(), und_certs[i]}].push_back(i);
    std::vector<std::vector<std::size_t>> members;
    for (auto &[key, idx] : groups)
        members.push_back(idx);

    struct Slot {
        bool half_arc = false;
        GhatRecord g;
        HatRecord h;
    };
    std::vector<Slot> slots(members.size());
    parallel_for(members.size(), jobs, [&](std::size_t k) {
        const std::size_t first = members[k].front();
        Slot &slot = slots[k];
        const Digraph &und = unds[first];
        const PermutationGroup aut = automorphism_group(und);
        const GraphClass cls = classify_graph(und, aut);
        const auto gb = girth_and_bipartite(und);
        const BigInt stab = aut.order() / und.order();
        if (cls == GraphClass::arc_transitive) {
            GhatRecord &r = slot.g;
            if (auto gw = gw_und.find(und_certs[first]); gw != gw_und.end())
                r.gw = gw->second;
            r.order = und.order();
            r.girth = gb.girth;
            r.bipartite = gb.bipartite;
            r.cayley = cayley_type(aut);
            r.a_stab = stab;
            std::vector<Digraph> family;
            for (auto i : members[k])
                family.push_back(entries[i].digraph);
            r.g_stabs = maximal_hat_stab_orders(und, family, true);
            r.solvable = is_solvable(aut);
            r.consistent = consistent_profile(und, aut);
        } else if (cls == GraphClass::half_arc_transitive) {
            if (gw_und.count(und_certs[first]))
                throw std::logic_error("a generalised wreath graph classified as half-arc-transitive");
            slot.half_arc = true;
            HatRecord &r = slot.h;
            const Digraph &d = entries[first].digraph;
            r.order = und.order();
            r.girth = gb.girth;
            r.bipartite = gb.bipartite;
            r.cayley = cayley_type(aut);
            r.g_stab = stab;
            r.solvable = is_solvable(aut);
            auto alt = alternating_cycles(d);
            r.radius = alt.radius;
            r.attachment = alt.attachment;
            r.attachment_type = alt.type;
            auto inv = alter_invariants(d, automorphism_group(d));
            r.alt_exponent = inv.exponent;
            r.alt_perimeter = inv.perimeter;
            r.alt_sequence = inv.sequence;
            if (auto cc = consistent_profile(und, aut); cc && !cc->empty()) {
                r.cc_min = cc->front().length;
                r.cc_max = cc->back().length;
            }
        } else {
            throw std::logic_error("underlying graph of a 2-ATD is neither arc- nor half-arc-transitive");
        }
    });

    std::map<std::size_t, std::size_t> ghat_serial, hat_serial;
    for (std::size_t k = 0; k < members.size(); ++k) {
        Slot &slot = slots[k];
        std::string name;
        if (slot.half_arc) {
            slot.h.name = name = census_name("HAT", slot.h.order, ++hat_serial[slot.h.order]);
            hat.push_back(std::move(slot.h));
        } else {
            if (slot.g.gw)
                name = "GWD" + gw_label(*slot.g.gw);
            else
                name = census_name("GHAT", slot.g.order, ++ghat_serial[slot.g.order]);
            slot.g.name = name;
            ghat.push_back(std::move(slot.g));
        }
        for (auto i : members[k])
            entries[i].record.underlying_name = name;
    }
}

CensusResult assemble_census(std::vector<Digraph> digraphs, std::vector<Provenance> provenance, std::size_t jobs)
{
    if (!provenance.empty() && provenance.size() != digraphs.size())
        throw std::invalid_argument("provenance list does not match the digraphs");
    const std::size_t n = digraphs.size();
    std::vector<CanonResult> canon(n);
    parallel_for(n, jobs, [&](std::size_t i) { canon[i] = canonical_search(digraphs[i]); });

    // first occurrence of each certificate wins
    std::map<std::vector<std::uint8_t>, std::size_t> first;
    for (std::size_t i = 0; i < n; ++i)
        first.emplace(canon[i].form.bytes, i);
    std::vector<std::size_t> keep;
    for (auto &[cert, i] : first)
        keep.push_back(i);
    std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
        return std::make_pair(digraphs[a].order(), std::cref(canon[a].form.bytes)) <
               std::make_pair(digraphs[b].order(), std::cref(canon[b].form.bytes));
    });

    CensusResult res;
    std::vector<PermutationGroup> auts;
    std::map<std::size_t, std::size_t> serial;
    for (auto i : keep) {
        AtdEntry e;
        e.digraph = std::move(digraphs[i]);
        e.serial = ++serial[e.digraph.order()];
        if (!provenance.empty())
            e.provenance = provenance[i];
        e.certificate = canon[i].form.bytes;
        e.record.name = census_name("ATD", e.digraph.order(), e.serial);
        e.record.order = e.digraph.order();
        res.entries.push_back(std::move(e));
        auts.push_back(std::move(canon[i].automorphisms));
    }
    std::map<std::vector<std::uint8_t>, std::size_t> by_cert;
    for (std::size_t k = 0; k < res.entries.size(); ++k)
        by_cert.emplace(res.entries[k].certificate, k);

    parallel_for(res.entries.size(), jobs, [&](std::size_t k) {
        AtdEntry &e = res.entries[k];
        const Digraph &d = e.digraph;
        const PermutationGroup &aut = auts[k];
        auto ok = verify_2atd(d, aut);
        if (!ok.ok)
            throw std::logic_error(e.record.name + " is not a 2-ATD: " + ok.reason);
        AtdRecord &r = e.record;
        auto opp = by_cert.find(canonical_form(opposite(d)).bytes);
        r.self_opposite = opp != by_cert.end() && opp->second == k;
        r.opposite_name = opp == by_cert.end() ? "?" : res.entries[opp->second].record.name;
        const Digraph und = underlying_graph(d);
        const PermutationGroup aut_und = automorphism_group(und);
        r.underlying_at = classify_graph(und, aut_und) == GraphClass::arc_transitive;
        r.s = max_s_arc_transitivity(d, aut, d.order()).s;
        auto rep = stabiliser_report(d, aut, aut_und);
        r.stab_order = rep.stab_order;
        r.stab_abelian = rep.stab_abelian;
        r.t_index = rep.index_to_smallest_at;
        r.a_index = rep.index_in_graph_aut;
        r.solvable = rep.aut_solvable;
        auto alt = alternating_cycles(d);
        r.radius = alt.radius;
        r.attachment = alt.attachment;
        r.attachment_type = alt.type;
        r.alt_cycles = alt.cycle_count();
        auto inv = alter_invariants(d, aut);
        r.alt_exponent = inv.exponent;
        r.alt_perimeter = inv.perimeter;
        r.alt_sequence = inv.sequence;
        r.is_gw = identify_gw(d).has_value();
    });
    derive_ghat_hat(res.entries, res.ghat, res.hat, jobs);
    return res;
}

namespace {

struct Candidates {
    std::vector<Digraph> digraphs;
    std::vector<Provenance> provenance;
};

void add_pair(Candidates &out, Digraph c, ProvenanceKind kind, const std::string &detail)
{
    Digraph opp = opposite(c);
    out.digraphs.push_back(std::move(c));
    out.provenance.push_back({kind, detail});
    out.digraphs.push_back(std::move(opp));
    out.provenance.push_back({kind, detail + " opp"});
}

std::vector<std::size_t> resolve_s_range(const CensusConfig &cfg)
{
    auto range = cfg.s_range.empty() ? default_s_range(cfg.m) : cfg.s_range;
    for (auto s : range)
        if (s < 1 || s > 5)
            throw std::invalid_argument("universal presentations are available for 1 <= s <= 5, got " +
                                        std::to_string(s));
    return range;
}

void say(const CensusConfig &cfg, const std::string &msg)
{
    if (cfg.progress)
        cfg.progress(msg);
}

} // namespace

CensusResult run_census(const CensusConfig &cfg)
{
    if (cfg.m < 1)
        throw std::invalid_argument("census needs m >= 1");
    std::vector<std::string> warnings;
    if (cfg.m >= 8100)
        warnings.push_back("m >= 8100: the exceptional 8100-vertex digraph is not generated, the census is "
                           "incomplete from order 8100 on");

    Candidates seed;
    if (cfg.include_gw)
        for (const auto &e : gw_catalogue(cfg.m)) {
            seed.digraphs.push_back(e.build());
            seed.provenance.push_back({ProvenanceKind::gw, "gw" + gw_label(e.params)});
        }

    std::vector<UniversalEntry> presentations;
    std::vector<CellReport> cells;
    if (cfg.quotients) {
        auto range = resolve_s_range(cfg);
        const std::size_t s_max = *std::max_element(range.begin(), range.end());
        for (auto &e : universal_catalogue(s_max))
            if (std::find(range.begin(), range.end(), e.type.s) != range.end()) {
                CellReport c;
                c.s = e.type.s;
                c.presentation = e.type.name;
                c.max_index = pow2(c.s) * cfg.m;
                if (c.max_index > cfg.index_cap)
                    throw CensusBudgetExceeded(c.presentation, "needs quotients of index up to " +
                                                                   std::to_string(c.max_index) +
                                                                   ", above the index cap " +
                                                                   std::to_string(cfg.index_cap));
                cells.push_back(c);
                presentations.push_back(std::move(e));
            }
    }

    std::vector<Candidates> found(cells.size());
    parallel_for(cells.size(), cfg.jobs, [&](std::size_t k) {
        CellReport &c = cells[k];
        const auto start = std::chrono::steady_clock::now();
        LowIndexOptions opts;
        opts.node_budget = cfg.node_budget;
        opts.index_cap = cfg.index_cap;
        const std::size_t unit = pow2(c.s);
        opts.accept_index = [unit](std::size_t i) { return i % unit == 0; };
        // a shunt's order is at most the order of the digraph
        opts.order_bounds = {{"g", cfg.m}};
        opts.label = c.presentation;
        LowIndexStats stats;
        std::vector<QuotientRecord> quotients;
        try {
            quotients = low_index_normal_quotients(presentations[k].presentation, c.max_index, opts, &stats);
        } catch (const QuotientBudgetExceeded &ex) {
            c.status = CellStatus::capped;
            throw CensusBudgetExceeded(c.presentation, ex.what());
        }
        c.nodes = stats.nodes;
        c.quotients = quotients.size();
        std::size_t serial = 0;
        for (const auto &q : quotients) {
            ++serial;
            auto cand = census_candidate(q.images, c.s);
            if (!cand)
                continue;
            ++c.accepted;
            add_pair(found[k], std::move(*cand), ProvenanceKind::quotient,
                     c.presentation + " index " + std::to_string(q.index) + " #" + std::to_string(serial));
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        say(cfg, "cell " + c.presentation + ": " + std::to_string(c.quotients) + " quotients, " +
                     std::to_string(c.accepted) + " accepted");
    });

    for (auto &f : found) {
        std::move(f.digraphs.begin(), f.digraphs.end(), std::back_inserter(seed.digraphs));
        std::move(f.provenance.begin(), f.provenance.end(), std::back_inserter(seed.provenance));
    }
    say(cfg, "assembling " + std::to_string(seed.digraphs.size()) + " candidates");
    CensusResult res = assemble_census(std::move(seed.digraphs), std::move(seed.provenance), cfg.jobs);
    res.cells = std::move(cells);
    res.m = cfg.m;
    res.complete = cfg.quotients && cfg.include_gw && cfg.m < 8100;
    res.warnings = std::move(warnings);
    return res;
}

CensusResult catalog_census(const std::vector<NamedGroup> &catalog, const CensusConfig &cfg)
{
    if (cfg.m < 1)
        throw std::invalid_argument("census needs m >= 1");
    auto range = resolve_s_range(cfg);
    const std::size_t s_max = *std::max_element(range.begin(), range.end());
    auto presentations = universal_catalogue(s_max);

    struct Job {
        std::size_t group;
        std::size_t presentation;
    };
    std::vector<Job> jobs;
    std::vector<CellReport> cells;
    for (std::size_t gi = 0; gi < catalog.size(); ++gi)
        for (std::size_t pi = 0; pi < presentations.size(); ++pi) {
            const std::size_t s = presentations[pi].type.s;
            if (std::find(range.begin(), range.end(), s) == range.end())
                continue;
            const BigInt &order = catalog[gi].group.order();
            if (order % pow2(s) != 0 || order > BigInt(pow2(s) * cfg.m))
                continue;
            jobs.push_back({gi, pi});
            CellReport c;
            c.s = s;
            c.presentation = catalog[gi].name + " " + presentations[pi].type.name;
            c.max_index = static_cast<std::size_t>(order);
            cells.push_back(c);
        }

    std::vector<Candidates> found(jobs.size());
    parallel_for(jobs.size(), cfg.jobs, [&](std::size_t k) {
        CellReport &c = cells[k];
        const auto start = std::chrono::steady_clock::now();
        std::vector<GroupQuotient> quotients;
        try {
            quotients = quotient_search_in_group(presentations[jobs[k].presentation].presentation,
                                                 catalog[jobs[k].group].group, cfg.catalog_element_cap);
        } catch (const std::length_error &ex) {
            c.status = CellStatus::capped;
            throw CensusBudgetExceeded(c.presentation, ex.what());
        }
        c.quotients = quotients.size();
        std::size_t serial = 0;
        for (const auto &q : quotients) {
            ++serial;
            auto cand = census_candidate(q.images, c.s);
            if (!cand)
                continue;
            ++c.accepted;
            add_pair(found[k], std::move(*cand), ProvenanceKind::catalog, c.presentation + " #" + std::to_string(serial));
        }
        c.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        say(cfg, "cell " + c.presentation + ": " + std::to_string(c.quotients) + " quotients, " +
                     std::to_string(c.accepted) + " accepted");
    });

    Candidates all;
    for (auto &f : found) {
        std::move(f.digraphs.begin(), f.digraphs.end(), std::back_inserter(all.digraphs));
        std::move(f.provenance.begin(), f.provenance.end(), std::back_inserter(all.provenance));
    }
    std::vector<std::size_t> keep;
    for (std::size_t i = 0; i < all.digraphs.size(); ++i)
        if (all.digraphs[i].order() <= cfg.m)
            keep.push_back(i);
    Candidates within;
    for (auto i : keep) {
        within.digraphs.push_back(std::move(all.digraphs[i]));
        within.provenance.push_back(std::move(all.provenance[i]));
    }
    CensusResult res = assemble_census(std::move(within.digraphs), std::move(within.provenance), cfg.jobs);
    res.cells = std::move(cells);
    res.m = cfg.m;
    res.complete = false;
    res.warnings.push_back("catalog census: complete only relative to the supplied groups");
    return res;
}

} // namespace atd
