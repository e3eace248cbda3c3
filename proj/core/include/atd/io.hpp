#pragma once

#include "atd/census.hpp"
#include "atd/digraph.hpp"

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

namespace atd {

class FormatError : public std::runtime_error {
public:
    FormatError(std::size_t line, const std::string &what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line)
    {
    }
    std::size_t line() const { return line_; }

private:
    std::size_t line_;
};

// ---- digraph documents -----------------------------------------------------
//
//   ATD-DIGRAPH v1 <n>
//   # name: <name>            (optional)
//   # provenance: <text>      (optional)
//   <out-neighbours of 0>
//   ...
//   <out-neighbours of n-1>
//
// Other lines starting with '#' are comments. An empty neighbour line is a sink.

struct DigraphDocument {
    Digraph digraph;
    std::string name;
    std::string provenance;
};

std::string write_digraph(const Digraph &d, const std::string &name = {}, const std::string &provenance = {});
DigraphDocument read_digraph(const std::string &text);

// ---- group catalogues ------------------------------------------------------
//
//   GROUP <name> degree=<d> [order=<o>]
//   <d space-separated images>    one line per generator
//   <blank line>

std::vector<NamedGroup> read_group_catalog(const std::string &text);
std::string write_group_catalog(const std::vector<NamedGroup> &groups);

// ---- CSV -------------------------------------------------------------------

enum class CsvKind { atd, ghat, hat };

const std::string &csv_header(CsvKind kind);
/// Commas inside a field become semicolons.
std::string csv_field(std::string value);

std::vector<std::string> atd_row(const AtdRecord &r);
std::vector<std::string> ghat_row(const GhatRecord &r);
std::vector<std::string> hat_row(const HatRecord &r);

std::string write_csv(CsvKind kind, const std::vector<std::vector<std::string>> &rows);
std::string atd_csv(const std::vector<AtdEntry> &entries);
std::string ghat_csv(const std::vector<GhatRecord> &records);
std::string hat_csv(const std::vector<HatRecord> &records);

// ---- files -----------------------------------------------------------------

std::string read_text_file(const std::filesystem::path &path);
void write_text_file(const std::filesystem::path &path, const std::string &text);

std::string census_report(const CensusResult &result);

/// digraphs/<ATD-n-k>.txt, atd.csv, ghat.csv, hat.csv and report.txt under dir.
void write_census(const CensusResult &result, const std::filesystem::path &dir);

/// Every digraph document in dir, in file-name order.
std::vector<DigraphDocument> read_digraph_dir(const std::filesystem::path &dir);

/// Recomputes the table named by the CSV header from the digraphs and lists
/// every difference (empty when they agree).
std::vector<std::string> validate_census(const std::filesystem::path &digraph_dir, const std::string &csv_text,
                                         std::size_t jobs = 1);

} // namespace atd
