// Copyright 2026 The conefact Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include "conefact/cone.hpp"

#include <json.hpp>
#include <sstream>

namespace conefact {

using Json = nlohmann::json;

/// [num, den] with integers when they fit in 64 bits, decimal strings otherwise.
inline Json rational_to_json(const Rational &x) {
    BigInt n = numer(x);
    BigInt d = denom(x);
    const BigInt limit = BigInt(1) << 62;
    if (abs(n) < limit && d < limit) {
        return Json::array({n.convert_to<int64_t>(), d.convert_to<int64_t>()});
    }
    return Json::array({n.str(), d.str()});
}

inline Rational rational_from_json(const Json &j) {
    if (!j.is_array() || j.size() != 2) {
        throw std::invalid_argument("rational must be a [num, den] pair");
    }
    auto part = [](const Json &v) { return v.is_string() ? BigInt(v.get<std::string>()) : BigInt(v.get<int64_t>()); };
    BigInt d = part(j[1]);
    if (d == 0) {
        throw std::invalid_argument("zero denominator");
    }
    return Rational(part(j[0])) / Rational(d);
}

/// Canonical object {dim, apex: [[num,den],...], axis: [...], cos: [num,den]}.
inline Json cone_to_json(const ConeSpec &c) {
    Json apex = Json::array();
    for (const auto &v : c.apex()) {
        apex.push_back(rational_to_json(v));
    }
    return Json{{"dim", c.dim()}, {"apex", apex}, {"axis", c.axis()}, {"cos", rational_to_json(c.cos())}};
}

inline ConeSpec cone_from_json(const Json &j) {
    QVec apex;
    for (const auto &v : j.at("apex")) {
        apex.push_back(rational_from_json(v));
    }
    IVec axis = j.at("axis").get<IVec>();
    if (j.contains("dim") && j.at("dim").get<size_t>() != apex.size()) {
        throw std::invalid_argument("dim does not match apex length");
    }
    return ConeSpec(apex, axis, rational_from_json(j.at("cos")));
}

inline Json ivec_to_json(const IVec &x) { return Json(x); }

/// Parses "px,py:tx,ty:cos" (rational entries like 1/2 allowed in apex and cos) or the JSON object form.
inline ConeSpec parse_cone(const std::string &text) {
    size_t start = text.find_first_not_of(" \t");
    if (start != std::string::npos && text[start] == '{') {
        return cone_from_json(Json::parse(text));
    }
    std::vector<std::string> parts;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ':')) {
        parts.push_back(part);
    }
    if (parts.size() != 3) {
        throw std::invalid_argument("cone must look like 'px,py:tx,ty:cos', got '" + text + "'");
    }
    auto fields = [](const std::string &list) {
        std::vector<std::string> out;
        std::stringstream in(list);
        std::string item;
        while (std::getline(in, item, ',')) {
            out.push_back(item);
        }
        return out;
    };
    QVec apex;
    for (const auto &f : fields(parts[0])) {
        apex.push_back(parse_rational(f));
    }
    IVec axis;
    for (const auto &f : fields(parts[1])) {
        Rational r = parse_rational(f);
        if (denom(r) != 1) {
            throw std::invalid_argument("cone axis must be integral");
        }
        axis.push_back(numer(r).convert_to<int64_t>());
    }
    return ConeSpec(apex, axis, parse_rational(parts[2]));
}

}  // namespace conefact
