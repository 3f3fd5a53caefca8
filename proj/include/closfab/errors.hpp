#pragma once

#include <stdexcept>
#include <string>

namespace closfab {

// Every library failure derives from Error so front ends can catch one type.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define CLOSFAB_DEFINE_ERROR(Name)            \
  class Name : public Error {                 \
   public:                                    \
    explicit Name(const std::string& what)    \
        : Error(#Name ": " + what) {}         \
  }

CLOSFAB_DEFINE_ERROR(InvalidSpec);
CLOSFAB_DEFINE_ERROR(UnknownFiber);
CLOSFAB_DEFINE_ERROR(ResourceConflict);
CLOSFAB_DEFINE_ERROR(UnknownConnection);
CLOSFAB_DEFINE_ERROR(InvalidRequest);
CLOSFAB_DEFINE_ERROR(InvalidInput);
CLOSFAB_DEFINE_ERROR(InvalidConfig);
CLOSFAB_DEFINE_ERROR(NoSplitterSpine);
CLOSFAB_DEFINE_ERROR(IndexOutOfRange);

#undef CLOSFAB_DEFINE_ERROR

}  // namespace closfab
