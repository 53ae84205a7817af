#ifndef QNT_CERTIFY_HPP
#define QNT_CERTIFY_HPP

#include <string>
#include <utility>
#include <vector>

#include "qnt/errors.hpp"
#include "qnt/integers.hpp"

namespace qnt {

/* A claimed prime factorization of n: primes strictly increasing,
   exponents at least 1, product equal to n, every base prime. */
struct factorization_certificate {
  Int n;
  std::vector<std::pair<Int, Int>> factors;
  friend bool operator==(const factorization_certificate&,
                         const factorization_certificate&) = default;
};

enum class exchange_source { fixture, live };

/* One query/response exchange with an external computer-algebra
   system, kept verbatim for auditability. */
struct external_exchange {
  std::string query;
  std::string raw_response;
  exchange_source source;
  std::string location; /* fixture path or live endpoint */
};

/* The exact factorization command for the external system; n >= 2. */
std::string render_factor_query(const Int& n);

/* The textual form of a factor list, matching the response grammar:
   "[(p, e), (p, e)]". */
std::string render_factor_response(const std::vector<std::pair<Int, Int>>& factors);

/* Parses "[(int, int), ...]" with arbitrary interleaved whitespace;
   at least one pair is required.  Malformed input raises parse_error
   carrying the offending offset. */
std::vector<std::pair<Int, Int>> parse_factor_response(const std::string& s);

/* Local check of a claimed factorization: base range, exponent range,
   strict monotonicity, deterministic primality, exact product.  When
   the check fails and reason is non-null it receives the first
   violated condition. */
bool verify_certificate(const Int& n, const std::vector<std::pair<Int, Int>>& factors,
                        std::string* reason = nullptr);

/* Transport performing one blocking exchange. */
class certify_transport {
 public:
  virtual ~certify_transport() = default;
  virtual external_exchange perform(const std::string& query) = 0;
};

/* Replays a recorded exchange from a file: first line is the expected
   query, the remaining bytes are the response.  A query mismatch is
   an error, so replays are byte-deterministic. */
class fixture_transport : public certify_transport {
 public:
  explicit fixture_transport(std::string path);
  external_exchange perform(const std::string& query) override;

 private:
  std::string path_;
};

/* POSTs the query text to one HTTP endpoint and returns the body. */
class live_transport : public certify_transport {
 public:
  explicit live_transport(std::string endpoint, int timeout_seconds = 10);
  external_exchange perform(const std::string& query) override;

 private:
  std::string endpoint_;
  int timeout_seconds_;
};

struct certified_factorization_result {
  factorization_certificate certificate;
  external_exchange exchange;
};

/* Render, exchange, parse, verify.  A response that parses but fails
   verification raises hypothesis_error with the reason. */
certified_factorization_result certified_factorization(const Int& n,
                                                       certify_transport& transport);

}  // namespace qnt

#endif
