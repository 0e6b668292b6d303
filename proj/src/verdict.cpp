#include "coprox/verdict.hpp"

#include "coprox/errors.hpp"

namespace coprox {

Epsilon::Epsilon(Rational value) : value_(std::move(value)), approx_(to_double(value_))
{
    if (value_ < 0 || value_ >= 1)
        throw InputError("epsilon must lie in [0, 1)");
}

Epsilon Epsilon::from_double(double value)
{
    return Epsilon(exact_rational(value));
}

}   // namespace coprox
