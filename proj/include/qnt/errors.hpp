#ifndef QNT_ERRORS_HPP
#define QNT_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace qnt {

/* Requested computation only exists for imaginary quadratic orders
   (unit groups, principality search, class groups). */
struct unsupported_order_error : std::domain_error {
  explicit unsupported_order_error(const std::string& what)
      : std::domain_error(what) {}
};

/* A method's runtime hypothesis failed (unverified multiplier set,
   solver flags false).  Distinct from malformed input. */
struct hypothesis_error : std::runtime_error {
  explicit hypothesis_error(const std::string& what)
      : std::runtime_error(what) {}
};

/* Textual input rejected at a definite byte offset. */
struct parse_error : std::runtime_error {
  parse_error(std::size_t position, const std::string& what)
      : std::runtime_error(what + " (at offset " + std::to_string(position) +
                           ")"),
        position(position) {}
  std::size_t position;
};

}  // namespace qnt

#endif
