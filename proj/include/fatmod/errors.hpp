#pragma once

#include <stdexcept>
#include <string>

namespace fatmod {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define FATMOD_DEFINE_ERROR(Name)                \
    class Name : public Error {                  \
    public:                                      \
        explicit Name(const std::string& what)   \
            : Error(#Name ": " + what) {}        \
    };

FATMOD_DEFINE_ERROR(MalformedGraph)
FATMOD_DEFINE_ERROR(LoopCollapse)
FATMOD_DEFINE_ERROR(NotExpandable)
FATMOD_DEFINE_ERROR(NotAnAutomorphism)
FATMOD_DEFINE_ERROR(WrongType)
FATMOD_DEFINE_ERROR(WrongBoundaryCount)
FATMOD_DEFINE_ERROR(BadLeafCount)
FATMOD_DEFINE_ERROR(NotSymmetric)
FATMOD_DEFINE_ERROR(ResourceLimit)
FATMOD_DEFINE_ERROR(CacheError)

#undef FATMOD_DEFINE_ERROR

}  // namespace fatmod
