// Copyright 2026 The qembed Authors
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//     http://www.apache.org/licenses/LICENSE-2.0
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
#pragma once

#include <charconv>
#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <system_error>
#include <vector>

#include "dataset.hpp"
#include "errors.hpp"

namespace qembed {

namespace detail {

inline std::string_view trim(std::string_view s) {
    const auto first = s.find_first_not_of(" \t\r\n\"'");
    if (first == std::string_view::npos) return {};
    const auto last = s.find_last_not_of(" \t\r\n\"'");
    return s.substr(first, last - first + 1);
}

inline std::vector<std::string> split_csv_line(std::string_view line) {
    std::vector<std::string> cells;
    std::size_t start = 0;
    while (true) {
        const auto comma = line.find(',', start);
        cells.emplace_back(trim(line.substr(start, comma - start)));
        if (comma == std::string_view::npos) break;
        start = comma + 1;
    }
    return cells;
}

inline std::optional<double> parse_double(std::string_view s) {
    if (s.empty()) return std::nullopt;
    if (s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size()) return std::nullopt;
    return v;
}

inline std::optional<long> parse_long(std::string_view s) {
    long v = 0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || ptr != s.data() + s.size() || s.empty()) return std::nullopt;
    return v;
}

inline std::vector<std::uint8_t> read_bytes(const std::filesystem::path &path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline std::uint32_t read_be32(const std::vector<std::uint8_t> &buf, std::size_t offset) {
    return (std::uint32_t{buf[offset]} << 24) | (std::uint32_t{buf[offset + 1]} << 16) |
           (std::uint32_t{buf[offset + 2]} << 8) | std::uint32_t{buf[offset + 3]};
}

} // namespace detail

/**
 * Loads a comma-separated file with an optional header row.
 *
 * `label_column` is a header name or an integer index (negative counts from
 * the end). Cells equal to `positive_label` become label 1; the label column
 * may hold exactly one other token, which becomes label 0. All remaining
 * columns are features, in file order.
 */
inline LabeledDataset load_csv(const std::filesystem::path &path, std::string_view label_column,
                               std::string_view positive_label) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path.string());

    std::vector<std::vector<std::string>> rows;
    std::vector<std::size_t> line_numbers;
    std::string line;
    for (std::size_t lineno = 1; std::getline(in, line); ++lineno) {
        if (detail::trim(line).empty()) continue;
        rows.push_back(detail::split_csv_line(line));
        line_numbers.push_back(lineno);
    }
    const std::string where = path.string();
    if (rows.empty()) throw InputError(where + ": empty file");

    const std::size_t width = rows.front().size();
    std::optional<std::size_t> label_idx;
    if (auto idx = detail::parse_long(label_column)) {
        const long w = static_cast<long>(width);
        if (*idx < -w || *idx >= w) {
            throw InputError(where + ": label column " + std::string(label_column) + " out of range");
        }
        label_idx = static_cast<std::size_t>(*idx < 0 ? *idx + w : *idx);
    }

    // The first row is a header if any would-be feature cell is not numeric.
    bool has_header = false;
    for (std::size_t c = 0; c < width; ++c) {
        if (c == label_idx) continue;
        if (!detail::parse_double(rows.front()[c])) {
            has_header = true;
            break;
        }
    }
    if (!label_idx) {
        for (std::size_t c = 0; has_header && c < width; ++c) {
            if (rows.front()[c] == label_column) label_idx = c;
        }
        if (!label_idx) {
            throw InputError(where + ": no column named '" + std::string(label_column) + "'");
        }
    }
    if (width < 2) throw InputError(where + ": need a label column and at least one feature");

    LabeledDataset data;
    data.name = path.stem().string();
    data.feature_dim = width - 1;
    std::optional<std::string> negative_label;
    for (std::size_t r = has_header ? 1 : 0; r < rows.size(); ++r) {
        const auto &row = rows[r];
        const std::string ctx = where + ":" + std::to_string(line_numbers[r]);
        if (row.size() != width) {
            throw InputError(ctx + ": expected " + std::to_string(width) + " columns, found " +
                             std::to_string(row.size()));
        }
        Sample s;
        s.features.reserve(width - 1);
        for (std::size_t c = 0; c < width; ++c) {
            if (c == *label_idx) continue;
            auto v = detail::parse_double(row[c]);
            if (!v) {
                throw InputError(ctx + ", column " + std::to_string(c + 1) +
                                 ": non-numeric value '" + row[c] + "'");
            }
            s.features.push_back(*v);
        }
        const std::string &token = row[*label_idx];
        if (token == positive_label) {
            s.label = 1;
        } else if (!negative_label || *negative_label == token) {
            negative_label = token;
            s.label = 0;
        } else {
            throw InputError(ctx + ", column " + std::to_string(*label_idx + 1) + ": unknown label '" +
                             token + "' (already saw '" + *negative_label + "' and positive '" +
                             std::string(positive_label) + "')");
        }
        data.samples.push_back(std::move(s));
    }
    if (data.samples.empty()) throw InputError(where + ": no samples");
    return data;
}

/**
 * Reads an MNIST image/label IDX pair, keeping digits `class_a` (label 0)
 * and `class_b` (label 1). Pixels are scaled to [0, 1].
 */
inline LabeledDataset load_mnist_idx(const std::filesystem::path &images_path,
                                     const std::filesystem::path &labels_path, int class_a,
                                     int class_b) {
    if (class_a == class_b) throw ConfigError("MNIST classes must differ");
    if (class_a < 0 || class_a > 9 || class_b < 0 || class_b > 9) {
        throw ConfigError("MNIST classes must be digits 0-9");
    }
    const auto images = detail::read_bytes(images_path);
    const auto labels = detail::read_bytes(labels_path);
    if (images.size() < 16 || detail::read_be32(images, 0) != 0x00000803U) {
        throw FormatError(images_path.string() + ": bad IDX image magic");
    }
    if (labels.size() < 8 || detail::read_be32(labels, 0) != 0x00000801U) {
        throw FormatError(labels_path.string() + ": bad IDX label magic");
    }
    const std::size_t count = detail::read_be32(images, 4);
    const std::size_t rows = detail::read_be32(images, 8);
    const std::size_t cols = detail::read_be32(images, 12);
    const std::size_t label_count = detail::read_be32(labels, 4);
    const std::size_t pixels = rows * cols;
    if (images.size() != 16 + count * pixels) {
        throw FormatError(images_path.string() + ": truncated or oversized image data");
    }
    if (labels.size() != 8 + label_count) {
        throw FormatError(labels_path.string() + ": truncated or oversized label data");
    }
    if (count != label_count) {
        throw FormatError("image count " + std::to_string(count) + " != label count " +
                          std::to_string(label_count));
    }

    LabeledDataset data;
    data.name = "mnist" + std::to_string(class_a) + std::to_string(class_b);
    data.feature_dim = pixels;
    for (std::size_t i = 0; i < count; ++i) {
        const int digit = labels[8 + i];
        if (digit != class_a && digit != class_b) continue;
        Sample s;
        s.label = digit == class_b ? 1 : 0;
        s.features.resize(pixels);
        const std::uint8_t *px = images.data() + 16 + i * pixels;
        for (std::size_t p = 0; p < pixels; ++p) s.features[p] = px[p] / 255.0;
        data.samples.push_back(std::move(s));
    }
    return data;
}

} // namespace qembed
