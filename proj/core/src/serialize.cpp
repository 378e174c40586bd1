#include "addcomb/serialize.hpp"

#include <algorithm>
#include <bit>
#include <cstring>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "addcomb/error.hpp"

namespace addcomb {

std::string to_json(const CyclicFn& f) {
    nlohmann::json j;
    j["n"] = f.modulus();
    auto& re = j["re"] = nlohmann::json::array();
    auto& im = j["im"] = nlohmann::json::array();
    for (const auto& v : f.values()) {
        re.push_back(v.real());
        im.push_back(v.imag());
    }
    return j.dump();
}

CyclicFn cyclic_fn_from_json(std::string_view text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        fail(ErrorKind::input, std::string("CyclicFn JSON: ") + e.what());
    }
    require(j.is_object() && j.contains("n") && j.contains("re"), "CyclicFn JSON: need fields n and re");
    const auto n = j.at("n").get<std::int64_t>();
    require(n >= 1, "CyclicFn JSON: n must be positive");
    const auto& re = j.at("re");
    require(re.is_array() && re.size() == static_cast<std::size_t>(n), "CyclicFn JSON: re must have n entries");
    std::vector<cplx> v(static_cast<std::size_t>(n));
    for (std::size_t i = 0; i < v.size(); ++i) v[i].real(re[i].get<double>());
    if (j.contains("im")) {
        const auto& im = j.at("im");
        require(im.is_array() && im.size() == v.size(), "CyclicFn JSON: im must have n entries");
        for (std::size_t i = 0; i < v.size(); ++i) v[i].imag(im[i].get<double>());
    }
    return CyclicFn(std::move(v));
}

namespace {

static_assert(std::endian::native == std::endian::little || std::endian::native == std::endian::big);

template <class T>
void put_le(std::string& out, T value) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, &value, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    out.append(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <class T>
T get_le(std::string_view in, std::size_t offset) {
    unsigned char buf[sizeof(T)];
    std::memcpy(buf, in.data() + offset, sizeof(T));
    if constexpr (std::endian::native == std::endian::big) std::reverse(buf, buf + sizeof(T));
    T value;
    std::memcpy(&value, buf, sizeof(T));
    return value;
}

}  // namespace

std::string to_binary(const CyclicFn& f) {
    std::string out;
    out.reserve(8 + 16 * f.modulus());
    put_le<std::uint64_t>(out, f.modulus());
    for (const auto& v : f.values()) {
        put_le<double>(out, v.real());
        put_le<double>(out, v.imag());
    }
    return out;
}

CyclicFn cyclic_fn_from_binary(std::string_view bytes) {
    require(bytes.size() >= 8, "CyclicFn binary: truncated header");
    const auto n = get_le<std::uint64_t>(bytes, 0);
    require(n >= 1, "CyclicFn binary: N must be positive");
    require(bytes.size() == 8 + 16 * n, "CyclicFn binary: size does not match N");
    std::vector<cplx> v(n);
    for (std::size_t i = 0; i < n; ++i) {
        v[i] = {get_le<double>(bytes, 8 + 16 * i), get_le<double>(bytes, 16 + 16 * i)};
    }
    return CyclicFn(std::move(v));
}

CyclicFn load_cyclic_fn(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) fail(ErrorKind::io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    const std::string data = ss.str();
    if (path.extension() == ".bin") return cyclic_fn_from_binary(data);
    return cyclic_fn_from_json(data);
}

void save_cyclic_fn(const CyclicFn& f, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) fail(ErrorKind::io, "cannot write " + path.string());
    const std::string data = path.extension() == ".bin" ? to_binary(f) : to_json(f);
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

}  // namespace addcomb
