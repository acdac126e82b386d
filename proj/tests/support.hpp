#pragma once

#include <random>
#include <string>

#include <diagchange/quadio.hpp>
#include <diagchange/scalar.hpp>

namespace dctest {

inline std::string fixture_path(const std::string& name) { return std::string(DC_FIXTURES) + "/" + name; }

inline dc::Quadrangulation load_fixture(const std::string& name) {
    return dc::deserialize(dc::read_text_file(fixture_path(name)));
}

inline dc::QuadFile load_fixture_raw(const std::string& name) {
    return dc::parse_quad_file(dc::read_text_file(fixture_path(name)));
}

inline dc::Scalar q(long p, long d = 1) { return dc::Scalar::rational(p, d); }
inline dc::Scalar sqrt2() { return dc::Scalar::sqrt_of(2); }
inline dc::Scalar S(const char* text) { return dc::Scalar::parse(text); }
inline dc::Vec2 V(const dc::Scalar& x, const dc::Scalar& y) { return {x, y}; }

inline dc::Scalar random_scalar(std::mt19937_64& rng, std::int64_t d, long range = 50) {
    std::uniform_int_distribution<long> num(-range, range);
    std::uniform_int_distribution<long> den(1, range);
    mpq_class a(num(rng), den(rng));
    mpq_class b(num(rng), den(rng));
    a.canonicalize();
    b.canonicalize();
    return dc::Scalar(a, d == 0 ? mpq_class(0) : b, d);
}

}  // namespace dctest
