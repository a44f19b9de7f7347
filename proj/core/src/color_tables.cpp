// Copyright Contributors to the edgediff project.
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <fstream>
#include <sstream>

#include <Eigen/LU>
#include <yaml-cpp/yaml.h>

#include "edgediff/color.hpp"
#include "edgediff/errors.hpp"

#include "embedded_tables.hpp"

namespace edgediff {

namespace {

constexpr double kMinDeterminant = 1e-9;

Eigen::Vector3d read_triple(const YAML::Node& node, const std::string& what)
{
    if (!node.IsSequence() || node.size() != 3)
        throw InputError(ErrorCode::Format, what + ": expected a list of three numbers");
    return {node[0].as<double>(), node[1].as<double>(), node[2].as<double>()};
}

}  // namespace

const char* to_string(Space space)
{
    switch (space) {
    case Space::XYZ: return "XYZ";
    case Space::LinearSRGB: return "LinearSRGB";
    case Space::LMS_CAT02: return "LMS_CAT02";
    case Space::LMS_CAT16: return "LMS_CAT16";
    case Space::LMS_HPE: return "LMS_HPE";
    case Space::LMS_OKLab: return "LMS_OKLab";
    case Space::ACC: return "ACC";
    case Space::IPT: return "IPT";
    case Space::OKLab: return "OKLab";
    }
    return "unknown";
}

Space space_from_string(std::string_view name)
{
    for (Space s : {Space::XYZ, Space::LinearSRGB, Space::LMS_CAT02, Space::LMS_CAT16, Space::LMS_HPE,
                    Space::LMS_OKLab, Space::ACC, Space::IPT, Space::OKLab})
        if (name == to_string(s))
            return s;
    throw InputError(ErrorCode::Format, "unknown color space tag '" + std::string(name) + "'");
}

ConversionMatrix::ConversionMatrix(const Eigen::Matrix3d& entries, Space from, Space to)
    : entries_(entries), from_(from), to_(to)
{
    if (!entries_.allFinite() || std::abs(entries_.determinant()) <= kMinDeterminant)
        throw InputError(ErrorCode::Format, std::string("conversion matrix ") + to_string(from) + "->"
                                                + to_string(to) + " is not invertible");
}

ConversionMatrix ConversionMatrix::inverse() const
{
    return ConversionMatrix(entries_.inverse(), to_, from_);
}

ColorTables ColorTables::parse(std::string_view yaml_text)
{
    YAML::Node root;
    try {
        root = YAML::Load(std::string(yaml_text));
    } catch (const YAML::Exception& e) {
        throw InputError(ErrorCode::Format, std::string("color table: ") + e.what());
    }

    ColorTables tables;
    try {
        for (const auto& entry : root["matrices"]) {
            const auto name = entry.first.as<std::string>();
            const YAML::Node& body = entry.second;
            const YAML::Node rows = body["rows"];
            if (!rows.IsSequence() || rows.size() != 3)
                throw InputError(ErrorCode::Format, "matrix '" + name + "': expected three rows");
            Eigen::Matrix3d m;
            for (int r = 0; r < 3; ++r)
                m.row(r) = read_triple(rows[r], "matrix '" + name + "'").transpose();
            tables.matrices_.emplace(name,
                                     ConversionMatrix(m, space_from_string(body["from"].as<std::string>()),
                                                      space_from_string(body["to"].as<std::string>())));
        }
        for (const auto& entry : root["illuminants"]) {
            const auto name = entry.first.as<std::string>();
            WhitePoint w = WhitePoint::from(read_triple(entry.second, "illuminant '" + name + "'"));
            w.validate();
            tables.illuminants_.emplace(name, w);
        }
    } catch (const YAML::Exception& e) {
        throw InputError(ErrorCode::Format, std::string("color table: ") + e.what());
    }
    return tables;
}

ColorTables ColorTables::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in)
        throw InputError(ErrorCode::Io, "cannot open color table " + path.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse(buffer.str());
}

std::shared_ptr<const ColorTables> ColorTables::builtin()
{
    static const auto tables = std::make_shared<const ColorTables>(parse(detail::kEmbeddedColorTables));
    return tables;
}

const ConversionMatrix& ColorTables::matrix(std::string_view name) const
{
    auto it = matrices_.find(name);
    if (it == matrices_.end())
        throw InputError(ErrorCode::Format, "color table has no matrix '" + std::string(name) + "'");
    return it->second;
}

bool ColorTables::has_matrix(std::string_view name) const
{
    return matrices_.find(name) != matrices_.end();
}

WhitePoint ColorTables::illuminant(std::string_view name) const
{
    auto it = illuminants_.find(name);
    if (it == illuminants_.end())
        throw InputError(ErrorCode::Format, "color table has no illuminant '" + std::string(name) + "'");
    return it->second;
}

}  // namespace edgediff
