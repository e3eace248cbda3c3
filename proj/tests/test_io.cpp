#include "atd/canonical.hpp"
#include "atd/census.hpp"
#include "atd/constructions.hpp"
#include "atd/io.hpp"
#include "test_support.hpp"

#include <doctest.h>

#include <filesystem>

using namespace atd;
using namespace atd::testing;
namespace fs = std::filesystem;

namespace {

std::vector<std::string> split(const std::string &s, char sep)
{
    std::vector<std::string> out(1);
    for (char c : s) {
        if (c == sep)
            out.emplace_back();
        else
            out.back().push_back(c);
    }
    return out;
}

std::size_t error_line(const std::string &text)
{
    try {
        read_digraph(text);
    } catch (const FormatError &e) {
        return e.line();
    }
    return 0;
}

fs::path scratch_dir(const std::string &name)
{
    auto dir = fs::temp_directory_path() / ("atd-test-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

const std::string s3_catalog = "# S3\n"
                               "GROUP S3 degree=3 order=6\n"
                               "1 0 2\n"
                               "1 2 0\n"
                               "\n";

} // namespace

TEST_CASE("digraph documents")
{
    auto w3 = wreath(3);
    auto text = write_digraph(w3, "W_3", "gw(3,1)");
    CHECK(text.rfind("ATD-DIGRAPH v1 6\n", 0) == 0);
    auto doc = read_digraph(text);
    CHECK(doc.digraph == w3);
    CHECK(doc.name == "W_3");
    CHECK(doc.provenance == "gw(3,1)");
    for (const auto &e : gw_catalogue(40))
        CHECK(read_digraph(write_digraph(*e.digraph)).digraph == *e.digraph);

    CHECK(error_line("ATD-DIGRAPH v1 6\n1 7\n\n\n\n\n\n") == 2);
    auto sink = read_digraph("ATD-DIGRAPH v1 2\n1\n\n");
    CHECK(sink.digraph.arc_count() == 1);
    CHECK(sink.digraph.out_valence(1) == 0);
    CHECK(error_line("ATD-DIGRAPH v1 2\n1\nATD-DIGRAPH v1 2\n0\n") == 3);
    CHECK(error_line("1 2\n") == 1);
    CHECK(error_line("ATD-DIGRAPH v1 3\n1\n2\n") != 0);
    CHECK(error_line("ATD-DIGRAPH v1 2\n1\n0\n1\n") == 4);
    CHECK(error_line("ATD-DIGRAPH v2 2\n1\n0\n") == 1);
    CHECK(error_line("ATD-DIGRAPH v1 2\n1x\n0\n") == 2);
    CHECK(error_line("# comment first\nATD-DIGRAPH v1 2\n1\n0\n") == 0);
}

TEST_CASE("group catalogues")
{
    auto one = read_group_catalog(s3_catalog);
    REQUIRE(one.size() == 1);
    CHECK(one[0].name == "S3");
    CHECK(one[0].group.order() == 6);

    std::string wrong = s3_catalog;
    wrong.replace(wrong.find("order=6"), 7, "order=7");
    CHECK_THROWS_AS(read_group_catalog(wrong), FormatError);

    auto two = read_group_catalog(s3_catalog + "GROUP C4 degree=4\n1 2 3 0\n");
    REQUIRE(two.size() == 2);
    CHECK(two[1].group.order() == 4);

    CHECK_THROWS_AS(read_group_catalog("GROUP X degree=3\n0 0 1\n"), FormatError);
    CHECK_THROWS_AS(read_group_catalog("GROUP X degree=3\n0 1\n"), FormatError);
    CHECK_THROWS_AS(read_group_catalog("0 1 2\n"), FormatError);
    CHECK_THROWS_AS(read_group_catalog("GROUP X order=2\n"), FormatError);

    auto again = read_group_catalog(write_group_catalog(two));
    REQUIRE(again.size() == 2);
    CHECK(again[0].group.same_group(two[0].group));
    CHECK(again[1].group.same_group(two[1].group));

    auto bundled = read_group_catalog(read_text_file(std::string(ATD_DATA_DIR) + "/groups-336.txt"));
    REQUIRE(bundled.size() == 3);
    for (const auto &g : bundled)
        CHECK(g.group.order() == 336);
}

TEST_CASE("CSV headers and fields")
{
    for (auto [kind, file, cols] : {std::tuple{CsvKind::atd, "atd-header.csv", 19},
                                    std::tuple{CsvKind::ghat, "ghat-header.csv", 9},
                                    std::tuple{CsvKind::hat, "hat-header.csv", 16}}) {
        CHECK(split(csv_header(kind), ',').size() == static_cast<std::size_t>(cols));
        CHECK(csv_header(kind) + "\n" == read_text_file(std::string(ATD_DATA_DIR) + "/golden/" + file));
        CHECK(write_csv(kind, {}) == csv_header(kind) + "\n");
    }
    CHECK(csv_field("[2,4]") == "[2;4]");
    CHECK(csv_field("GWD(3,1)") == "GWD(3;1)");

    auto res = assemble_census({generalised_wreath(3, 1), generalised_wreath(3, 2)});
    auto lines = split(atd_csv(res.entries), '\n');
    REQUIRE(lines.size() == 4); // header, two rows, trailing empty piece
    auto w31 = split(lines[1], ',');
    auto w32 = split(lines[2], ',');
    REQUIRE(w31.size() == 19);
    REQUIRE(w32.size() == 19);
    CHECK(w31[0] == "ATD[6;1]");
    CHECK(w31[18] == "yes");
    CHECK(w31[2] == "yes");
    CHECK(w31[3] == w31[0]);
    CHECK(w31[5] == "GWD(3;1)");
    CHECK(w32[17] == "[2;4]");
    for (const auto &line : lines)
        for (const auto &field : split(line, ','))
            CHECK(field.find(',') == std::string::npos);
}

TEST_CASE("census files validate")
{
    CensusConfig cfg;
    cfg.m = 12;
    auto res = run_census(cfg);
    auto dir = scratch_dir("census12");
    write_census(res, dir);
    CHECK(fs::exists(dir / "report.txt"));
    CHECK(read_digraph_dir(dir / "digraphs").size() == res.entries.size());
    for (auto csv : {"atd.csv", "ghat.csv", "hat.csv"})
        CHECK(validate_census(dir / "digraphs", read_text_file(dir / csv)).empty());

    auto text = read_text_file(dir / "atd.csv");
    auto pos = text.find(",yes,");
    REQUIRE(pos != std::string::npos);
    text.replace(pos, 5, ",no,");
    CHECK(validate_census(dir / "digraphs", text).size() == 1);
    CHECK_FALSE(validate_census(dir / "digraphs", "bogus\n").empty());
    fs::remove_all(dir);
}
