#ifndef COPROX_ERRORS_HPP
#define COPROX_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace coprox {

/** Base class for every error raised by the library. */
class Error : public std::runtime_error
{
    public:
        explicit Error(const std::string& what) : std::runtime_error(what) {}
};

class DimensionMismatchError : public Error
{
    public:
        explicit DimensionMismatchError(const std::string& what) : Error(what) {}
};

/** Raised when an operation is undefined at the zero vector (e.g. J(0)). */
class ZeroVectorError : public Error
{
    public:
        explicit ZeroVectorError(const std::string& what) : Error(what) {}
};

class NotPolyhedralError : public Error
{
    public:
        explicit NotPolyhedralError(const std::string& what) : Error(what) {}
};

/** Facet enumeration dimension cap or selection-enumeration cap exceeded. */
class CapExceededError : public Error
{
    public:
        explicit CapExceededError(const std::string& what) : Error(what) {}
};

/** Y = {0} or Y = X passed to a decider that needs a proper subspace. */
class ImproperSubspaceError : public Error
{
    public:
        explicit ImproperSubspaceError(const std::string& what) : Error(what) {}
};

/** Malformed or invalid input (bad vertex set, non-unit vector, bad JSON). */
class InputError : public Error
{
    public:
        explicit InputError(const std::string& what) : Error(what) {}
};

/** The question is outside what can be decided exactly for this space. */
class UnsupportedError : public Error
{
    public:
        explicit UnsupportedError(const std::string& what) : Error(what) {}
};

/** Two independent computations disagreed. Always an implementation bug. */
class ConsistencyError : public Error
{
    public:
        explicit ConsistencyError(const std::string& what) : Error(what) {}
};

}   // namespace coprox

#endif
