#include "atd/canonical.hpp"
#include "atd/census.hpp"
#include "atd/constructions.hpp"
#include "atd/io.hpp"

#include <CLI11.hpp>

#include <iostream>

using namespace atd;

namespace {

constexpr int exit_mismatch = 1;
constexpr int exit_usage = 2;
constexpr int exit_budget = 3;

Digraph load(const std::string &path) { return read_digraph(read_text_file(path)).digraph; }

void emit(const std::string &text, const std::string &out)
{
    if (out.empty())
        std::cout << text;
    else
        write_text_file(out, text);
}

int analyze(const std::string &path)
{
    Digraph d = load(path);
    auto ok = verify_2atd(d);
    if (!ok.ok) {
        std::cout << "not a 2-ATD: " << ok.reason << "\n";
        return exit_mismatch;
    }
    const auto cert = canonical_form(d).bytes;
    CensusResult res = assemble_census({d, opposite(d)});
    for (const auto &e : res.entries)
        if (e.certificate == cert) {
            std::vector<std::vector<std::string>> rows{atd_row(e.record)};
            std::cout << write_csv(CsvKind::atd, rows);
        }
    return 0;
}

int census(std::size_t m, std::size_t s_max, std::size_t index_cap, bool gw_only, const std::string &catalog,
           std::size_t jobs, const std::string &out)
{
    CensusConfig cfg;
    cfg.m = m;
    cfg.index_cap = index_cap;
    cfg.jobs = jobs;
    cfg.quotients = !gw_only;
    if (s_max > 0)
        for (std::size_t s = 1; s <= s_max; ++s)
            cfg.s_range.push_back(s);
    cfg.progress = [](const std::string &msg) { std::cerr << msg << "\n"; };
    CensusResult res;
    if (!catalog.empty())
        res = catalog_census(read_group_catalog(read_text_file(catalog)), cfg);
    else
        res = run_census(cfg);
    write_census(res, out);
    std::cout << census_report(res);
    return 0;
}

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"Arc-transitive digraphs of in- and out-valence 2"};
    app.require_subcommand(1);

    std::string out;
    auto *construct = app.add_subcommand("construct", "build a digraph and print its document");
    construct->require_subcommand(1);
    construct->add_option("-o,--out", out, "output file (stdout when absent)");
    std::size_t n = 0, r = 0;
    auto *c_wreath = construct->add_subcommand("wreath", "wreath digraph W_n");
    c_wreath->add_option("n", n)->required()->check(CLI::Range(3, 1 << 20));
    auto *c_gwd = construct->add_subcommand("gwd", "generalised wreath digraph W(n, r)");
    c_gwd->add_option("n", n)->required()->check(CLI::Range(3, 1 << 20));
    c_gwd->add_option("r", r)->required()->check(CLI::Range(1, 62));
    std::string input;
    auto *c_pl = construct->add_subcommand("pl", "partial line digraph Pl^r of a digraph file");
    c_pl->add_option("file", input)->required()->check(CLI::ExistingFile);
    c_pl->add_option("r", r)->required();
    std::string group_name;
    std::size_t shunt_index = 0;
    auto *c_coset = construct->add_subcommand("coset", "Cos(G, H, g) from a catalogue group: g is one generator, "
                                                        "H is generated by the others");
    c_coset->add_option("catalog", input)->required()->check(CLI::ExistingFile);
    c_coset->add_option("--group", group_name, "group name (first group when absent)");
    c_coset->add_option("--shunt", shunt_index, "1-based generator index of g (last when absent)");
    for (auto *sub : {c_wreath, c_gwd, c_pl, c_coset})
        sub->fallthrough();

    std::string file_a, file_b;
    auto *analyze_cmd = app.add_subcommand("analyze", "print the ATD record of a digraph");
    analyze_cmd->add_option("file", file_a)->required()->check(CLI::ExistingFile);

    std::size_t max_order = 0, s_max = 0, index_cap = 512, jobs = 1;
    bool gw_only = false;
    std::string catalog, out_dir = "census-out";
    auto *census_cmd = app.add_subcommand("census", "enumerate 2-ATDs up to a given order");
    census_cmd->add_option("--max-order", max_order)->required()->check(CLI::Range(1, 1 << 20));
    census_cmd->add_option("--s-max", s_max, "largest s (default max(4, t))")->check(CLI::Range(1, 5));
    census_cmd->add_option("--index-cap", index_cap, "largest quotient index any cell may need");
    census_cmd->add_flag("--gw-only", gw_only, "generalised wreath digraphs only");
    census_cmd->add_option("--catalog", catalog, "group catalogue replacing the quotient search")
        ->check(CLI::ExistingFile);
    census_cmd->add_option("--jobs", jobs)->check(CLI::Range(1, 1024));
    census_cmd->add_option("--out", out_dir, "output directory");

    auto *iso_cmd = app.add_subcommand("iso", "test two digraph files for isomorphism");
    iso_cmd->add_option("f1", file_a)->required()->check(CLI::ExistingFile);
    iso_cmd->add_option("f2", file_b)->required()->check(CLI::ExistingFile);

    auto *selfopp_cmd = app.add_subcommand("selfopp", "test whether a digraph is isomorphic to its opposite");
    selfopp_cmd->add_option("file", file_a)->required()->check(CLI::ExistingFile);

    std::string dir, csv;
    auto *validate_cmd = app.add_subcommand("validate", "recompute a census CSV from its digraph files");
    validate_cmd->add_option("digraph-dir", dir)->required()->check(CLI::ExistingDirectory);
    validate_cmd->add_option("csv", csv)->required()->check(CLI::ExistingFile);
    validate_cmd->add_option("--jobs", jobs)->check(CLI::Range(1, 1024));

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : exit_usage;
    }

    try {
        if (*construct) {
            if (*c_wreath) {
                emit(write_digraph(wreath(n), "W_" + std::to_string(n)), out);
            } else if (*c_gwd) {
                if (n < r + 1)
                    throw std::invalid_argument("W(n, r) is arc-transitive only for n >= r + 1");
                emit(write_digraph(generalised_wreath(n, r),
                                   "W(" + std::to_string(n) + "," + std::to_string(r) + ")"),
                     out);
            } else if (*c_pl) {
                emit(write_digraph(partial_line(load(input), r)), out);
            } else if (*c_coset) {
                auto groups = read_group_catalog(read_text_file(input));
                const NamedGroup *g = nullptr;
                for (const auto &x : groups)
                    if (group_name.empty() || x.name == group_name) {
                        g = &x;
                        break;
                    }
                if (!g)
                    throw std::invalid_argument("no group named '" + group_name + "' in " + input);
                auto gens = g->group.generators();
                if (gens.size() < 2)
                    throw std::invalid_argument("need at least two generators");
                const std::size_t k = shunt_index == 0 ? gens.size() - 1 : shunt_index - 1;
                if (k >= gens.size())
                    throw std::invalid_argument("shunt index out of range");
                Permutation shunt = gens[k];
                gens.erase(gens.begin() + static_cast<std::ptrdiff_t>(k));
                PermutationGroup h(g->group.degree(), gens);
                emit(write_digraph(coset_digraph(g->group, h, shunt).digraph, "Cos(" + g->name + ")"), out);
            }
            return 0;
        }
        if (*analyze_cmd)
            return analyze(file_a);
        if (*census_cmd)
            return census(max_order, s_max, index_cap, gw_only, catalog, jobs, out_dir);
        if (*iso_cmd) {
            bool same = are_isomorphic(load(file_a), load(file_b));
            std::cout << (same ? "isomorphic" : "not isomorphic") << "\n";
            return same ? 0 : exit_mismatch;
        }
        if (*selfopp_cmd) {
            bool same = is_self_opposite(load(file_a));
            std::cout << (same ? "self-opposite" : "not self-opposite") << "\n";
            return same ? 0 : exit_mismatch;
        }
        if (*validate_cmd) {
            auto diffs = validate_census(dir, read_text_file(csv), jobs);
            for (const auto &d : diffs)
                std::cout << d << "\n";
            std::cout << diffs.size() << " differences\n";
            return diffs.empty() ? 0 : exit_mismatch;
        }
    } catch (const CensusBudgetExceeded &e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return exit_budget;
    } catch (const QuotientBudgetExceeded &e) {
        std::cerr << "budget exhausted: " << e.what() << "\n";
        return exit_budget;
    } catch (const FormatError &e) {
        std::cerr << "format error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::invalid_argument &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception &e) {
        std::cerr << "error: " << e.what() << "\n";
        return exit_mismatch;
    }
    return 0;
}
