#include <doctest.h>

#include <filesystem>
#include <random>
#include <string>

#include "estf/error.hpp"
#include "estf/io.hpp"
#include "support.hpp"

using namespace estf;
namespace fs = std::filesystem;

namespace {

std::vector<std::uint8_t> bytes_of(std::string_view s) { return {s.begin(), s.end()}; }
std::string text_of(const std::vector<std::uint8_t>& b) { return {b.begin(), b.end()}; }

std::uint64_t error_offset(std::span<const std::uint8_t> bytes, io::Format f, const io::ReadOptions& options = {}) {
    try {
        io::decode(bytes, f, options);
    } catch (const FormatError& e) {
        return e.offset();
    }
    return ~std::uint64_t{0};
}

// Streams every format can hold: x, y < 256 and t < 2^23.
EventStream atis_sized(std::mt19937_64& gen) {
    return testing::random_stream(gen, {200, 256, 256, io::kAtisMaxTime});
}

}  // namespace

TEST_CASE("format names and extensions") {
    CHECK(io::parse_format("csv") == io::Format::Csv);
    CHECK(io::parse_format("evt1") == io::Format::Evt1);
    CHECK(io::parse_format("atis") == io::Format::AtisBin);
    CHECK_FALSE(io::parse_format("aedat"));
    CHECK(io::format_for_path("a/b.evt1") == io::Format::Evt1);
    CHECK(io::format_for_path("x.bin") == io::Format::AtisBin);
    CHECK_FALSE(io::format_for_path("x.txt"));
}

TEST_CASE("CSV") {
    SUBCASE("one record with a geometry hint") {
        const auto s = io::decode(bytes_of("3,4,100,1\n"), io::Format::Csv, {SensorGeometry{128, 128, 1000}});
        CHECK(s.geometry() == SensorGeometry{128, 128, 1000});
        REQUIRE(s.size() == 1);
        CHECK(s[0] == Event{3, 4, 100, 1});
    }
    SUBCASE("inferred geometry, signed polarity, CRLF, comments") {
        const auto s = io::decode(bytes_of("# recorded\r\n7,2,50,-1\r\n\n1,9,20,+1\r\n"), io::Format::Csv);
        CHECK(s.geometry() == SensorGeometry{8, 10, 50});
        REQUIRE(s.size() == 2);
        CHECK(s[0] == Event{1, 9, 20, 1});
        CHECK(s[1] == Event{7, 2, 50, 0});
    }
    SUBCASE("writer emits a geometry line then bare records") {
        const EventStream s({640, 480, 999}, {{3, 4, 100, 1}});
        CHECK(text_of(io::encode(s, io::Format::Csv)) == "# width=640 height=480 t_max=999\n3,4,100,1\n");
        CHECK(io::decode(io::encode(s, io::Format::Csv), io::Format::Csv) == s);
    }
    SUBCASE("empty stream") {
        const EventStream s({2, 3, 4}, {});
        CHECK(io::decode(io::encode(s, io::Format::Csv), io::Format::Csv) == s);
        CHECK(io::decode({}, io::Format::Csv).empty());
    }
    SUBCASE("malformed records report the line offset") {
        CHECK(error_offset(bytes_of("1,2,3,1\n1,2,3\n"), io::Format::Csv) == 8);
        CHECK(error_offset(bytes_of("1,2,3,1,5\n"), io::Format::Csv) == 0);
        CHECK(error_offset(bytes_of("1,2,3,2\n"), io::Format::Csv) == 0);
        CHECK(error_offset(bytes_of("1,2,-3,1\n"), io::Format::Csv) == 0);
        CHECK(error_offset(bytes_of("65536,2,3,1\n"), io::Format::Csv) == 0);
        CHECK(error_offset(bytes_of("1, 2,3,1\n"), io::Format::Csv) == 0);
        CHECK(error_offset(bytes_of("0,0,0,0\n1,1,1,1\n9,0,0,0\n"), io::Format::Csv, {SensorGeometry{4, 4, 10}}) == 16);
    }
}

TEST_CASE("EVT1") {
    SUBCASE("empty stream is a bare header") {
        const EventStream s({346, 260, 5000}, {});
        const auto b = io::encode(s, io::Format::Evt1);
        CHECK(b == std::vector<std::uint8_t>{'E', 'V', 'T', '1', 0x5A, 0x01, 0x04, 0x01, 0x88, 0x13, 0, 0, 0, 0,
                                             0, 0, 0, 0, 0, 0, 0, 0, 0, 0});
        CHECK(io::decode(b, io::Format::Evt1) == s);
    }
    SUBCASE("record layout") {
        const EventStream s({4, 4, 0x1234}, {{1, 2, 0x0102, 1}});
        const auto b = io::encode(s, io::Format::Evt1);
        REQUIRE(b.size() == 24 + 13);
        CHECK(b[16] == 1);
        CHECK(std::vector<std::uint8_t>(b.begin() + 24, b.end()) ==
              std::vector<std::uint8_t>{1, 0, 2, 0, 0x02, 0x01, 0, 0, 0, 0, 0, 0, 1});
    }
    SUBCASE("errors carry offsets") {
        const EventStream s({8, 8, 100}, {{1, 1, 5, 0}, {2, 2, 6, 1}});
        const auto good = io::encode(s, io::Format::Evt1);

        CHECK(error_offset(std::span(good).first(10), io::Format::Evt1) == 0);
        auto magic = good;
        magic[3] = '2';
        CHECK(error_offset(magic, io::Format::Evt1) == 0);
        CHECK(error_offset(std::span(good).first(good.size() - 1), io::Format::Evt1) == 24 + 13);
        auto tail = good;
        tail.push_back(0);
        CHECK(error_offset(tail, io::Format::Evt1) == good.size());
        auto pol = good;
        pol[24 + 13 + 12] = 2;
        CHECK(error_offset(pol, io::Format::Evt1) == 24 + 13 + 12);
        auto wide = good;
        wide[24 + 13] = 8;  // x = 8 on an 8-wide sensor
        CHECK(error_offset(wide, io::Format::Evt1) == 24 + 13);
        auto zero = good;
        zero[4] = zero[5] = 0;
        CHECK(error_offset(zero, io::Format::Evt1) == 4);
        CHECK(error_offset(good, io::Format::Evt1, {SensorGeometry{2, 2, 100}}) == 24 + 13);
        // A count near 2^64 must not overflow the size check.
        auto count = good;
        std::fill(count.begin() + 16, count.begin() + 24, 0xFF);
        CHECK(error_offset(count, io::Format::Evt1) == 24 + 26);
    }
    SUBCASE("capacity") {
        CHECK_THROWS_AS(io::encode(EventStream({70000, 1, 0}, {}), io::Format::Evt1), InvalidArgument);
        CHECK_THROWS_AS(io::encode(EventStream({1, 1, ~std::uint64_t{0}}, {}), io::Format::Evt1), InvalidArgument);
    }
}

TEST_CASE("ATIS_BIN") {
    SUBCASE("hand-decoded record") {
        const auto s = io::decode(std::vector<std::uint8_t>{0x05, 0x0A, 0x80, 0x00, 0x64}, io::Format::AtisBin);
        REQUIRE(s.size() == 1);
        CHECK(s[0] == Event{5, 10, 100, 1});
        CHECK(io::encode(s, io::Format::AtisBin) == std::vector<std::uint8_t>{0x05, 0x0A, 0x80, 0x00, 0x64});
    }
    SUBCASE("largest timestamp, OFF polarity") {
        const auto s = io::decode(std::vector<std::uint8_t>{0xFF, 0x00, 0x7F, 0xFF, 0xFF}, io::Format::AtisBin);
        CHECK(s[0] == Event{255, 0, io::kAtisMaxTime, 0});
    }
    SUBCASE("swap_xy") {
        io::ReadOptions options;
        options.swap_xy = true;
        const auto s = io::decode(std::vector<std::uint8_t>{0x05, 0x0A, 0x80, 0x00, 0x64}, io::Format::AtisBin, options);
        CHECK(s[0] == Event{10, 5, 100, 1});
    }
    SUBCASE("errors") {
        const std::vector<std::uint8_t> two{1, 1, 0, 0, 9, 1, 1, 0, 0, 8};
        CHECK(error_offset(two, io::Format::AtisBin) == 5);
        CHECK(error_offset(std::span(two).first(7), io::Format::AtisBin) == 5);
        CHECK(error_offset(std::span(two).first(5), io::Format::AtisBin, {SensorGeometry{1, 2, 100}}) == 0);
        CHECK_THROWS_AS(io::encode(EventStream({300, 1, 0}, {{256, 0, 0, 0}}), io::Format::AtisBin), InvalidArgument);
        CHECK_THROWS_AS(io::encode(EventStream({1, 1, 1u << 23}, {{0, 0, 1u << 23, 0}}), io::Format::AtisBin),
                        InvalidArgument);
    }
    SUBCASE("empty file") { CHECK(io::decode({}, io::Format::AtisBin).empty()); }
}

TEST_CASE("round trips on random streams") {
    std::mt19937_64 gen(404);
    for (int round = 0; round < 300; ++round) {
        const auto s = atis_sized(gen);
        for (io::Format f : {io::Format::Csv, io::Format::Evt1}) {
            const auto bytes = io::encode(s, f);
            REQUIRE(io::decode(bytes, f) == s);
            REQUIRE(io::encode(io::decode(bytes, f), f) == bytes);
        }
        // ATIS carries no geometry, so read it back under the original one.
        const auto bytes = io::encode(s, io::Format::AtisBin);
        REQUIRE(io::decode(bytes, io::Format::AtisBin, {s.geometry()}) == s);
    }
}

TEST_CASE("10^5-event fixture survives a file round trip") {
    const auto s = testing::dense_stream(100000, 77, {640, 480, 50'000'000});
    const fs::path dir = fs::temp_directory_path() / "estf_io_test";
    fs::create_directories(dir);
    for (io::Format f : {io::Format::Csv, io::Format::Evt1}) {
        const std::string path = (dir / ("fixture." + std::string(io::to_string(f)))).string();
        io::write(s, path, f);
        CHECK(io::read(path, f) == s);
    }
    fs::remove_all(dir);
    CHECK_THROWS_AS(io::read((dir / "missing.evt1").string(), io::Format::Evt1), IoError);
    CHECK_THROWS_AS(io::write(s, "/nonexistent/dir/out.evt1", io::Format::Evt1), IoError);
}

TEST_CASE("fuzzed inputs either parse or raise a positioned error") {
    std::mt19937_64 gen(5);
    const EventStream seed_stream({16, 16, 1000}, {{1, 2, 3, 1}, {4, 5, 6, 0}, {7, 8, 900, 1}});
    for (io::Format f : {io::Format::Csv, io::Format::Evt1, io::Format::AtisBin}) {
        const auto base = io::encode(seed_stream, f);
        for (int round = 0; round < 3000; ++round) {
            auto b = base;
            switch (gen() % 3) {
                case 0:
                    b[gen() % b.size()] = static_cast<std::uint8_t>(gen());
                    break;
                case 1:
                    b.resize(gen() % (b.size() + 1));
                    break;
                default:
                    b.resize(gen() % 64);
                    for (auto& c : b) c = static_cast<std::uint8_t>(gen());
            }
            try {
                const auto s = io::decode(b, f);
                REQUIRE(validate(s).empty());
            } catch (const FormatError& e) {
                REQUIRE(e.offset() <= b.size());
            }
        }
    }
}
