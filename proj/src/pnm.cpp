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

#include "docseg/pnm.hpp"

#include <cctype>
#include <cstdio>

namespace docseg {

namespace {

// Cursor over the header section. Netpbm allows '#' comments anywhere
// between header tokens.
struct HeaderCursor {
    std::span<const std::uint8_t> data;
    std::size_t pos = 0;

    bool eof() const { return pos >= data.size(); }
    int peek() const { return eof() ? -1 : data[pos]; }

    void skip_space_and_comments() {
        while (!eof()) {
            int c = peek();
            if (c == '#') {
                while (!eof() && peek() != '\n') ++pos;
            } else if (std::isspace(c)) {
                ++pos;
            } else {
                break;
            }
        }
    }

    int next_int(const char* field) {
        skip_space_and_comments();
        if (eof() || !std::isdigit(peek()))
            throw DecodeError(std::string("pnm: missing or non-numeric ") + field);
        long v = 0;
        while (!eof() && std::isdigit(peek())) {
            v = v * 10 + (peek() - '0');
            if (v > 1000000000L)
                throw DecodeError(std::string("pnm: ") + field + " out of range");
            ++pos;
        }
        return static_cast<int>(v);
    }
};

GrayImage make_gray(int width, int height) {
    if (width <= 0) throw DecodeError("pnm: width must be positive");
    if (height <= 0) throw DecodeError("pnm: height must be positive");
    GrayImage img;
    img.width = width;
    img.height = height;
    img.pixels.resize(static_cast<std::size_t>(width) * height);
    return img;
}

GrayImage decode_p2(HeaderCursor& cur) {
    int width = cur.next_int("width");
    int height = cur.next_int("height");
    int maxval = cur.next_int("maxval");
    if (maxval != 255) throw DecodeError("pnm: maxval must be 255");
    GrayImage img = make_gray(width, height);
    for (std::size_t i = 0; i < img.size(); ++i) {
        int v = cur.next_int("sample");
        if (v > 255) throw DecodeError("pnm: sample exceeds maxval");
        img.pixels[i] = static_cast<std::uint8_t>(v);
    }
    return img;
}

GrayImage decode_p5(HeaderCursor& cur) {
    int width = cur.next_int("width");
    int height = cur.next_int("height");
    int maxval = cur.next_int("maxval");
    if (maxval != 255) throw DecodeError("pnm: maxval must be 255");
    // Exactly one whitespace byte separates the header from the raster.
    if (cur.eof() || !std::isspace(cur.peek()))
        throw DecodeError("pnm: missing raster separator");
    ++cur.pos;
    GrayImage img = make_gray(width, height);
    if (cur.data.size() - cur.pos < img.size())
        throw DecodeError("pnm: truncated raster");
    for (std::size_t i = 0; i < img.size(); ++i)
        img.pixels[i] = cur.data[cur.pos + i];
    return img;
}

GrayImage decode_p1(HeaderCursor& cur) {
    int width = cur.next_int("width");
    int height = cur.next_int("height");
    GrayImage img = make_gray(width, height);
    // P1 bits may be packed without separators; comments remain legal.
    for (std::size_t i = 0; i < img.size(); ++i) {
        cur.skip_space_and_comments();
        int c = cur.peek();
        if (c != '0' && c != '1')
            throw DecodeError("pnm: bad or missing P1 sample");
        ++cur.pos;
        img.pixels[i] = (c == '1') ? 0 : 255; // black -> 0, white -> 255
    }
    return img;
}

GrayImage decode_p4(HeaderCursor& cur) {
    int width = cur.next_int("width");
    int height = cur.next_int("height");
    if (cur.eof() || !std::isspace(cur.peek()))
        throw DecodeError("pnm: missing raster separator");
    ++cur.pos;
    GrayImage img = make_gray(width, height);
    std::size_t row_bytes = (static_cast<std::size_t>(width) + 7) / 8;
    if (cur.data.size() - cur.pos < row_bytes * height)
        throw DecodeError("pnm: truncated raster");
    for (int r = 0; r < height; ++r) {
        const std::uint8_t* row = cur.data.data() + cur.pos + row_bytes * r;
        for (int c = 0; c < width; ++c) {
            int bit = (row[c / 8] >> (7 - c % 8)) & 1;
            img.at(r, c) = bit ? 0 : 255;
        }
    }
    return img;
}

} // namespace

GrayImage decode_image(std::span<const std::uint8_t> bytes) {
    if (bytes.size() < 2 || bytes[0] != 'P')
        throw DecodeError("pnm: missing magic number");
    char kind = static_cast<char>(bytes[1]);
    HeaderCursor cur{bytes, 2};
    switch (kind) {
        case '1': return decode_p1(cur);
        case '2': return decode_p2(cur);
        case '4': return decode_p4(cur);
        case '5': return decode_p5(cur);
        default:
            throw DecodeError(std::string("pnm: unsupported magic number P") + kind);
    }
}

GrayImage decode_image(const std::string& bytes) {
    return decode_image(std::span<const std::uint8_t>(
        reinterpret_cast<const std::uint8_t*>(bytes.data()), bytes.size()));
}

RgbImage RgbImage::from_gray(const GrayImage& g) {
    RgbImage img;
    img.width = g.width;
    img.height = g.height;
    img.pixels.resize(g.size() * 3);
    for (std::size_t i = 0; i < g.size(); ++i) {
        img.pixels[3 * i] = g.pixels[i];
        img.pixels[3 * i + 1] = g.pixels[i];
        img.pixels[3 * i + 2] = g.pixels[i];
    }
    return img;
}

std::string encode_pgm(const GrayImage& img, bool raw) {
    char header[64];
    std::snprintf(header, sizeof header, "P%c\n%d %d\n255\n", raw ? '5' : '2',
                  img.width, img.height);
    std::string out(header);
    if (raw) {
        out.append(reinterpret_cast<const char*>(img.pixels.data()), img.size());
    } else {
        char buf[8];
        for (int r = 0; r < img.height; ++r) {
            for (int c = 0; c < img.width; ++c) {
                std::snprintf(buf, sizeof buf, "%d%c", img.at(r, c),
                              c + 1 == img.width ? '\n' : ' ');
                out += buf;
            }
        }
    }
    return out;
}

std::string encode_pbm(const BinaryImage& img, bool raw) {
    char header[64];
    std::snprintf(header, sizeof header, "P%c\n%d %d\n", raw ? '4' : '1',
                  img.width, img.height);
    std::string out(header);
    if (raw) {
        std::size_t row_bytes = (static_cast<std::size_t>(img.width) + 7) / 8;
        std::vector<std::uint8_t> row(row_bytes);
        for (int r = 0; r < img.height; ++r) {
            std::fill(row.begin(), row.end(), 0);
            for (int c = 0; c < img.width; ++c)
                if (img.at(r, c)) row[c / 8] |= std::uint8_t(0x80u >> (c % 8));
            out.append(reinterpret_cast<const char*>(row.data()), row_bytes);
        }
    } else {
        for (int r = 0; r < img.height; ++r) {
            for (int c = 0; c < img.width; ++c) {
                out += img.at(r, c) ? '1' : '0';
                out += (c + 1 == img.width) ? '\n' : ' ';
            }
        }
    }
    return out;
}

std::string encode_ppm(const RgbImage& img) {
    char header[64];
    std::snprintf(header, sizeof header, "P6\n%d %d\n255\n", img.width, img.height);
    std::string out(header);
    out.append(reinterpret_cast<const char*>(img.pixels.data()), img.pixels.size());
    return out;
}

} // namespace docseg
