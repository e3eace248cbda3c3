#include "atd/io.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

namespace atd {

namespace {

std::vector<std::string> split_lines(const std::string &text)
{
    std::vector<std::string> lines;
    std::string cur;
    for (char c : text) {
        if (c == '\n') {
            lines.push_back(std::move(cur));
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    if (!cur.empty())
        lines.push_back(std::move(cur));
    return lines;
}

std::vector<std::string> tokens(const std::string &line)
{
    std::istringstream in(line);
    std::vector<std::string> out;
    for (std::string t; in >> t;)
        out.push_back(t);
    return out;
}

std::size_t parse_count(const std::string &tok, std::size_t line, const char *what)
{
    std::size_t v = 0;
    auto [p, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), v);
    if (ec != std::errc{} || p != tok.data() + tok.size())
        throw FormatError(line, std::string("malformed ") + what + " '" + tok + "'");
    return v;
}

bool starts_with(const std::string &s, const std::string &prefix) { return s.rfind(prefix, 0) == 0; }

std::string trim(std::string s)
{
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t'))
        s.pop_back();
    std::size_t i = 0;
    while (i < s.size() && (s[i] == ' ' || s[i] == '\t'))
        ++i;
    return s.substr(i);
}

std::string yes_no(bool b) { return b ? "yes" : "no"; }
std::string solv(bool b) { return b ? "solv" : "n-solv"; }

std::string attachment_field(AttachmentType t) { return t == AttachmentType::other ? "---" : to_string(t); }

std::string cayley_field(CayleyType t) { return t == CayleyType::n_cay ? "n-Cay" : to_string(t); }

std::string is_cay_field(CayleyType t)
{
    switch (t) {
    case CayleyType::circ:
    case CayleyType::ab_cay:
    case CayleyType::cay:
        return "Cay";
    case CayleyType::n_cay:
        return "n-Cay";
    case CayleyType::unknown:
        break;
    }
    return "?";
}

template <class T, class F> std::string bracket_list(const std::vector<T> &xs, F fmt)
{
    std::string out = "[";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i)
            out += ",";
        out += fmt(xs[i]);
    }
    return out + "]";
}

std::string girth_field(const std::optional<std::size_t> &g) { return g ? std::to_string(*g) : "0"; }

} // namespace

// ---- digraph documents -----------------------------------------------------

std::string write_digraph(const Digraph &d, const std::string &name, const std::string &provenance)
{
    std::string out = "ATD-DIGRAPH v1 " + std::to_string(d.order()) + "\n";
    if (!name.empty())
        out += "# name: " + name + "\n";
    if (!provenance.empty())
        out += "# provenance: " + provenance + "\n";
    for (Vertex v = 0; v < d.order(); ++v) {
        bool first = true;
        for (Vertex w : d.out(v)) {
            if (!first)
                out += ' ';
            out += std::to_string(w);
            first = false;
        }
        out += '\n';
    }
    return out;
}

DigraphDocument read_digraph(const std::string &text)
{
    DigraphDocument doc;
    const auto lines = split_lines(text);
    std::optional<std::size_t> n;
    std::vector<Arc> arcs;
    std::size_t rows = 0;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const std::string &line = lines[i];
        if (starts_with(line, "#")) {
            std::string body = trim(line.substr(1));
            if (starts_with(body, "name:"))
                doc.name = trim(body.substr(5));
            else if (starts_with(body, "provenance:"))
                doc.provenance = trim(body.substr(11));
            continue;
        }
        if (starts_with(line, "ATD-DIGRAPH")) {
            if (n)
                throw FormatError(lineno, "duplicate header");
            auto t = tokens(line);
            if (t.size() != 3 || t[1] != "v1")
                throw FormatError(lineno, "expected 'ATD-DIGRAPH v1 <n>'");
            n = parse_count(t[2], lineno, "vertex count");
            if (*n == 0)
                throw FormatError(lineno, "a digraph needs at least one vertex");
            continue;
        }
        if (!n)
            throw FormatError(lineno, "missing 'ATD-DIGRAPH v1 <n>' header");
        if (rows == *n)
            throw FormatError(lineno, "more than " + std::to_string(*n) + " neighbour lines");
        for (const auto &tok : tokens(line)) {
            std::size_t w = parse_count(tok, lineno, "vertex");
            if (w >= *n)
                throw FormatError(lineno, "vertex " + tok + " out of range for " + std::to_string(*n) + " vertices");
            arcs.emplace_back(static_cast<Vertex>(rows), static_cast<Vertex>(w));
        }
        ++rows;
    }
    if (!n)
        throw FormatError(1, "missing 'ATD-DIGRAPH v1 <n>' header");
    if (rows != *n)
        throw FormatError(lines.size(), "expected " + std::to_string(*n) + " neighbour lines, found " +
                                            std::to_string(rows));
    doc.digraph = Digraph(*n, std::move(arcs));
    return doc;
}

// ---- group catalogues ------------------------------------------------------

std::vector<NamedGroup> read_group_catalog(const std::string &text)
{
    struct Pending {
        std::string name;
        std::size_t degree = 0;
        std::optional<BigInt> order;
        std::size_t line = 0;
        std::vector<Permutation> gens;
    };
    std::vector<NamedGroup> out;
    std::optional<Pending> cur;
    auto finish = [&] {
        if (!cur)
            return;
        PermutationGroup g(cur->degree, cur->gens);
        if (cur->order && g.order() != *cur->order)
            throw FormatError(cur->line, "group " + cur->name + " declares order " + cur->order->str() +
                                             " but its generators give " + g.order().str());
        out.push_back({cur->name, std::move(g)});
        cur.reset();
    };
    const auto lines = split_lines(text);
    for (std::size_t i = 0; i < lines.size(); ++i) {
        const std::size_t lineno = i + 1;
        const std::string line = trim(lines[i]);
        if (starts_with(line, "#"))
            continue;
        if (line.empty()) {
            finish();
            continue;
        }
        auto t = tokens(line);
        if (t[0] == "GROUP") {
            finish();
            if (t.size() < 3)
                throw FormatError(lineno, "expected 'GROUP <name> degree=<d> [order=<o>]'");
            Pending p;
            p.name = t[1];
            p.line = lineno;
            for (std::size_t k = 2; k < t.size(); ++k) {
                if (starts_with(t[k], "degree="))
                    p.degree = parse_count(t[k].substr(7), lineno, "degree");
                else if (starts_with(t[k], "order="))
                    try {
                        p.order = BigInt(t[k].substr(6));
                    } catch (const std::exception &) {
                        throw FormatError(lineno, "malformed order '" + t[k].substr(6) + "'");
                    }
                else
                    throw FormatError(lineno, "unknown attribute '" + t[k] + "'");
            }
            if (p.degree == 0)
                throw FormatError(lineno, "missing degree");
            cur = std::move(p);
            continue;
        }
        if (!cur)
            throw FormatError(lineno, "permutation outside a GROUP block");
        if (t.size() != cur->degree)
            throw FormatError(lineno, "expected " + std::to_string(cur->degree) + " images, found " +
                                          std::to_string(t.size()));
        std::vector<Point> images;
        for (const auto &tok : t)
            images.push_back(static_cast<Point>(parse_count(tok, lineno, "image")));
        try {
            cur->gens.emplace_back(std::move(images));
        } catch (const std::invalid_argument &) {
            throw FormatError(lineno, "not a permutation");
        }
    }
    finish();
    return out;
}

std::string write_group_catalog(const std::vector<NamedGroup> &groups)
{
    std::string out;
    for (const auto &g : groups) {
        out += "GROUP " + g.name + " degree=" + std::to_string(g.group.degree()) + " order=" + g.group.order().str() +
               "\n";
        for (const auto &p : g.group.generators()) {
            for (std::size_t i = 0; i < p.degree(); ++i)
                out += (i ? " " : "") + std::to_string(p[static_cast<Point>(i)]);
            out += "\n";
        }
        out += "\n";
    }
    return out;
}

// ---- CSV -------------------------------------------------------------------

const std::string &csv_header(CsvKind kind)
{
    static const std::string atd = "Name,|V|,SelfOpp,Opp,IsUndAT,UndGrph,s,GvAb,|Tv:Gv|,|Av:Gv|,Solv,Rad,AtNo,AtTy,"
                                   "|AltCyc|,AltExp,AltPer,AltSeq,IsGWD";
    static const std::string ghat = "Name,|V|,gir,bip,CayTy,|Av|,|Gv|,solv,[|ConCyc|]";
    static const std::string hat =
        "Name,|V|,gir,bip,IsCay,|Gv|,Solv,Rad,AtNo,AtTy,AltExp,AltPer,AltSeq,CCa,CCb,MetaCircTy";
    switch (kind) {
    case CsvKind::atd:
        return atd;
    case CsvKind::ghat:
        return ghat;
    case CsvKind::hat:
        break;
    }
    return hat;
}

std::string csv_field(std::string value)
{
    std::replace(value.begin(), value.end(), ',', ';');
    return value;
}

std::vector<std::string> atd_row(const AtdRecord &r)
{
    auto num = [](std::size_t x) { return std::to_string(x); };
    return {r.name,
            num(r.order),
            yes_no(r.self_opposite),
            r.opposite_name,
            yes_no(r.underlying_at),
            r.underlying_name,
            num(r.s),
            r.stab_abelian ? "Ab" : "n-Ab",
            r.t_index.str(),
            r.a_index.str(),
            solv(r.solvable),
            num(r.radius),
            num(r.attachment),
            attachment_field(r.attachment_type),
            num(r.alt_cycles),
            num(r.alt_exponent),
            num(r.alt_perimeter),
            bracket_list(r.alt_sequence, num),
            yes_no(r.is_gw)};
}

std::vector<std::string> ghat_row(const GhatRecord &r)
{
    std::string cc = "?";
    if (r.consistent)
        cc = bracket_list(*r.consistent, [](const ConCycle &c) {
            return std::to_string(c.length) + (c.symmetric ? "s" : "c");
        });
    return {r.name,
            std::to_string(r.order),
            girth_field(r.girth),
            r.bipartite ? "b" : "nb",
            cayley_field(r.cayley),
            r.a_stab.str(),
            bracket_list(r.g_stabs.orders, [](const BigInt &x) { return x.str(); }),
            solv(r.solvable),
            cc};
}

std::vector<std::string> hat_row(const HatRecord &r)
{
    auto num = [](std::size_t x) { return std::to_string(x); };
    auto opt = [](const std::optional<std::size_t> &x) { return x ? std::to_string(*x) : std::string("?"); };
    return {r.name,
            num(r.order),
            girth_field(r.girth),
            r.bipartite ? "b" : "nb",
            is_cay_field(r.cayley),
            r.g_stab.str(),
            solv(r.solvable),
            num(r.radius),
            num(r.attachment),
            attachment_field(r.attachment_type),
            num(r.alt_exponent),
            num(r.alt_perimeter),
            bracket_list(r.alt_sequence, num),
            opt(r.cc_min),
            opt(r.cc_max),
            r.attachment_type == AttachmentType::tight ? "{I}" : "?"};
}

std::string write_csv(CsvKind kind, const std::vector<std::vector<std::string>> &rows)
{
    std::string out = csv_header(kind) + "\n";
    for (const auto &row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i)
                out += ',';
            out += csv_field(row[i]);
        }
        out += '\n';
    }
    return out;
}

std::string atd_csv(const std::vector<AtdEntry> &entries)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto &e : entries)
        rows.push_back(atd_row(e.record));
    return write_csv(CsvKind::atd, rows);
}

std::string ghat_csv(const std::vector<GhatRecord> &records)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto &r : records)
        if (!r.gw)
            rows.push_back(ghat_row(r));
    return write_csv(CsvKind::ghat, rows);
}

std::string hat_csv(const std::vector<HatRecord> &records)
{
    std::vector<std::vector<std::string>> rows;
    for (const auto &r : records)
        rows.push_back(hat_row(r));
    return write_csv(CsvKind::hat, rows);
}

// ---- files -----------------------------------------------------------------

std::string read_text_file(const std::filesystem::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path &path, const std::string &text)
{
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out << text;
    if (!out)
        throw std::runtime_error("write failed for " + path.string());
}

std::string census_report(const CensusResult &result)
{
    std::ostringstream out;
    out << "max order: " << result.m << "\n";
    out << "2-ATDs: " << result.entries.size() << "\n";
    out << "arc-transitive 4-GHATs (generalised wreath graphs excluded): "
        << std::count_if(result.ghat.begin(), result.ghat.end(), [](const GhatRecord &r) { return !r.gw; }) << "\n";
    out << "4-HATs: " << result.hat.size() << "\n";
    for (const auto &w : result.warnings)
        out << "warning: " << w << "\n";
    out << "cells:\n";
    for (const auto &c : result.cells)
        out << "  s=" << c.s << " " << c.presentation << " index<=" << c.max_index << " quotients=" << c.quotients
            << " accepted=" << c.accepted << " nodes=" << c.nodes
            << " status=" << (c.status == CellStatus::complete ? "complete" : "capped") << "\n";
    std::map<std::size_t, std::pair<std::size_t, std::size_t>> per_order;
    for (const auto &e : result.entries) {
        auto &x = per_order[e.record.order];
        ++x.first;
        x.second += e.record.is_gw ? 0 : 1;
    }
    out << "per order (total, not generalised wreath):\n";
    for (const auto &[order, x] : per_order)
        out << "  " << order << ": " << x.first << " " << x.second << "\n";
    if (result.complete)
        out << "complete for all orders <= " << result.m << "\n";
    else
        out << "completeness not claimed\n";
    return out.str();
}

void write_census(const CensusResult &result, const std::filesystem::path &dir)
{
    namespace fs = std::filesystem;
    fs::create_directories(dir / "digraphs");
    for (const auto &e : result.entries)
        write_text_file(dir / "digraphs" /
                            ("ATD-" + std::to_string(e.record.order) + "-" + std::to_string(e.serial) + ".txt"),
                        write_digraph(e.digraph, e.record.name, e.provenance.detail));
    write_text_file(dir / "atd.csv", atd_csv(result.entries));
    write_text_file(dir / "ghat.csv", ghat_csv(result.ghat));
    write_text_file(dir / "hat.csv", hat_csv(result.hat));
    write_text_file(dir / "report.txt", census_report(result));
}

std::vector<DigraphDocument> read_digraph_dir(const std::filesystem::path &dir)
{
    namespace fs = std::filesystem;
    std::vector<fs::path> files;
    for (const auto &f : fs::directory_iterator(dir))
        if (f.is_regular_file() && f.path().extension() == ".txt")
            files.push_back(f.path());
    std::sort(files.begin(), files.end());
    std::vector<DigraphDocument> out;
    for (const auto &f : files) {
        try {
            out.push_back(read_digraph(read_text_file(f)));
        } catch (const FormatError &e) {
            throw std::runtime_error(f.string() + ": " + e.what());
        }
    }
    return out;
}

std::vector<std::string> validate_census(const std::filesystem::path &digraph_dir, const std::string &csv_text,
                                         std::size_t jobs)
{
    auto lines = split_lines(csv_text);
    if (lines.empty())
        return {"empty CSV"};
    std::optional<CsvKind> kind;
    for (CsvKind k : {CsvKind::atd, CsvKind::ghat, CsvKind::hat})
        if (lines[0] == csv_header(k))
            kind = k;
    if (!kind)
        return {"unrecognised header: " + lines[0]};

    std::vector<Digraph> digraphs;
    for (auto &doc : read_digraph_dir(digraph_dir))
        digraphs.push_back(std::move(doc.digraph));
    CensusResult res = assemble_census(std::move(digraphs), {}, jobs);
    std::string expect;
    switch (*kind) {
    case CsvKind::atd:
        expect = atd_csv(res.entries);
        break;
    case CsvKind::ghat:
        expect = ghat_csv(res.ghat);
        break;
    case CsvKind::hat:
        expect = hat_csv(res.hat);
        break;
    }
    auto want = split_lines(expect);
    std::vector<std::string> diffs;
    for (std::size_t i = 1; i < std::max(want.size(), lines.size()); ++i) {
        const std::string got = i < lines.size() ? lines[i] : "<missing>";
        const std::string exp = i < want.size() ? want[i] : "<missing>";
        if (got != exp)
            diffs.push_back("row " + std::to_string(i) + ": csv has '" + got + "', recomputed '" + exp + "'");
    }
    return diffs;
}

} // namespace atd
