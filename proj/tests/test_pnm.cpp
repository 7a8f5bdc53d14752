// Copyright 2026 The docseg authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <string>
#include <vector>

#include "doctest.h"
#include "docseg/pnm.hpp"
#include "docseg/rng.hpp"
#include "oracles.hpp"

using namespace docseg;

namespace {

// Minimal reference PGM reader used only to cross-check the codec. Parses
// P5 with a single whitespace byte after the maxval.
GrayImage reference_read_p5(const std::string& bytes) {
    REQUIRE(bytes.substr(0, 2) == "P5");
    std::size_t pos = 2;
    const auto read_int = [&] {
        while (pos < bytes.size() &&
               (bytes[pos] == ' ' || bytes[pos] == '\n' || bytes[pos] == '\t' ||
                bytes[pos] == '\r'))
            ++pos;
        int v = 0;
        while (pos < bytes.size() && bytes[pos] >= '0' && bytes[pos] <= '9')
            v = v * 10 + (bytes[pos++] - '0');
        return v;
    };
    GrayImage img;
    img.width = read_int();
    img.height = read_int();
    REQUIRE(read_int() == 255);
    ++pos;
    REQUIRE(bytes.size() - pos >= img.size());
    for (int i = 0; i < img.width * img.height; ++i)
        img.pixels.push_back(static_cast<std::uint8_t>(bytes[pos + i]));
    return img;
}

} // namespace

TEST_CASE("plain pgm decodes samples in order") {
    const GrayImage img = decode_image(std::string("P2\n2 1\n255\n0 255\n"));
    CHECK(img.width == 2);
    CHECK(img.height == 1);
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 255});
}

TEST_CASE("plain pbm maps black bits to intensity 0") {
    const GrayImage img = decode_image(std::string("P1\n2 1\n1 0\n"));
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 255});
}

TEST_CASE("pbm bits may be packed without separators") {
    const GrayImage img = decode_image(std::string("P1\n4 1\n1010\n"));
    CHECK(img.pixels == std::vector<std::uint8_t>{0, 255, 0, 255});
}

TEST_CASE("header comments are skipped") {
    const GrayImage img =
        decode_image(std::string("P2 # comment\n# another\n1 1\n255\n7\n"));
    CHECK(img.pixels == std::vector<std::uint8_t>{7});
}

TEST_CASE("raw pgm round trip matches a reference reader") {
    Rng rng(41);
    for (int trial = 0; trial < 100; ++trial) {
        const int w = 1 + static_cast<int>(rng.below(32));
        const int h = 1 + static_cast<int>(rng.below(32));
        const GrayImage img = oracle::random_gray(rng, w, h);

        const std::string bytes = encode_pgm(img, true);
        const GrayImage ref = reference_read_p5(bytes);
        const GrayImage back = decode_image(bytes);
        CHECK(ref.pixels == img.pixels);
        CHECK(back.pixels == img.pixels);
        CHECK(back.width == w);
        CHECK(back.height == h);
    }
}

TEST_CASE("plain pgm round trip") {
    Rng rng(42);
    const GrayImage img = oracle::random_gray(rng, 13, 9);
    const GrayImage back = decode_image(encode_pgm(img, false));
    CHECK(back.pixels == img.pixels);
}

TEST_CASE("pbm round trips preserve every bit") {
    Rng rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const int w = 1 + static_cast<int>(rng.below(40));
        const int h = 1 + static_cast<int>(rng.below(16));
        const BinaryImage img = oracle::random_mask(rng, w, h, 0.5);

        for (const bool raw : {true, false}) {
            const GrayImage back = decode_image(encode_pbm(img, raw));
            REQUIRE(back.width == w);
            REQUIRE(back.height == h);
            for (int r = 0; r < h; ++r)
                for (int c = 0; c < w; ++c)
                    CHECK((back.at(r, c) == 0) == (img.at(r, c) != 0));
        }
    }
}

TEST_CASE("ppm encoding carries the rgb header") {
    RgbImage img;
    img.width = 2;
    img.height = 1;
    img.pixels = {1, 2, 3, 4, 5, 6};
    const std::string bytes = encode_ppm(img);
    CHECK(bytes.substr(0, 2) == "P6");
    CHECK(bytes.size() == bytes.find("255\n") + 4 + 6);
}

TEST_CASE("decode errors name the offending field") {
    CHECK_THROWS_WITH_AS(decode_image(std::string("")), "pnm: missing magic number",
                         DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P7\n1 1\n255\n")),
                         "pnm: unsupported magic number P7", DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P2\n\n")),
                         "pnm: missing or non-numeric width", DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P2\n2 2\n")),
                         "pnm: missing or non-numeric maxval", DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P2\n1 1\n65535\n0\n")),
                         "pnm: maxval must be 255", DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P2\n1 1\n255\n300\n")),
                         "pnm: sample exceeds maxval", DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P5\n4 4\n255\nab")),
                         "pnm: truncated raster", DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P2\n0 1\n255\n")),
                         "pnm: width must be positive", DecodeError);
    CHECK_THROWS_WITH_AS(decode_image(std::string("P1\n1 2\n1\n")),
                         "pnm: bad or missing P1 sample", DecodeError);
}
