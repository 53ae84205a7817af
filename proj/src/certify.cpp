#include "qnt/certify.hpp"

#include <cctype>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "httplib.h"

namespace qnt {

std::string render_factor_query(const Int& n) {
  if (n < 2) {
    throw std::invalid_argument("render_factor_query: n must be at least 2");
  }
  return "print(list(ZZ(" + n.get_str() + ").factor()))";
}

std::string render_factor_response(const std::vector<std::pair<Int, Int>>& factors) {
  std::string out = "[";
  bool first = true;
  for (const auto& [p, e] : factors) {
    if (!first) out += ", ";
    first = false;
    out += "(" + p.get_str() + ", " + e.get_str() + ")";
  }
  out += "]";
  return out;
}

namespace {

struct response_reader {
  const std::string& s;
  std::size_t pos = 0;

  void skip_ws() {
    while (pos < s.size() && std::isspace(static_cast<unsigned char>(s[pos]))) ++pos;
  }

  [[noreturn]] void fail(const std::string& expected) {
    throw parse_error(pos, "parse_factor_response: expected " + expected);
  }

  void expect(char c) {
    skip_ws();
    if (pos >= s.size() || s[pos] != c) fail(std::string("'") + c + "'");
    ++pos;
  }

  Int take_int() {
    skip_ws();
    std::size_t start = pos;
    if (pos < s.size() && s[pos] == '-') ++pos;
    std::size_t digits = pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ++pos;
    if (pos == digits) {
      pos = start;
      fail("an integer");
    }
    /* Only canonical literals are accepted; a leading zero would let
       two spellings of one certificate differ by a single byte. */
    if (pos - digits > 1 && s[digits] == '0') {
      pos = digits;
      fail("an integer without leading zeros");
    }
    return Int(s.substr(start, pos - start));
  }

  std::pair<Int, Int> take_pair() {
    expect('(');
    Int p = take_int();
    expect(',');
    Int e = take_int();
    expect(')');
    return {p, e};
  }
};

}  // namespace

std::vector<std::pair<Int, Int>> parse_factor_response(const std::string& s) {
  response_reader r{s};
  std::vector<std::pair<Int, Int>> out;
  r.expect('[');
  out.push_back(r.take_pair());
  for (;;) {
    r.skip_ws();
    if (r.pos < s.size() && s[r.pos] == ',') {
      ++r.pos;
      out.push_back(r.take_pair());
      continue;
    }
    break;
  }
  r.expect(']');
  r.skip_ws();
  if (r.pos != s.size()) {
    throw parse_error(r.pos, "parse_factor_response: trailing input");
  }
  return out;
}

bool verify_certificate(const Int& n, const std::vector<std::pair<Int, Int>>& factors,
                        std::string* reason) {
  auto fail = [&](std::string r) {
    if (reason) *reason = std::move(r);
    return false;
  };
  Int prod = 1;
  Int prev = 0;
  for (const auto& [p, e] : factors) {
    if (p < 2) return fail("base " + p.get_str() + " is less than 2");
    if (e < 1) return fail("exponent " + e.get_str() + " of " + p.get_str() +
                           " is less than 1");
    if (p <= prev) {
      return fail("bases not strictly increasing at " + p.get_str());
    }
    if (!is_prime(p)) return fail("base " + p.get_str() + " is not prime");
    prev = p;
    for (Int k = 0; k < e; ++k) {
      prod *= p;
      if (prod > n) {
        return fail("product exceeds " + n.get_str());
      }
    }
  }
  if (prod != n) {
    return fail("product " + prod.get_str() + " does not equal " + n.get_str());
  }
  return true;
}

fixture_transport::fixture_transport(std::string path) : path_(std::move(path)) {}

external_exchange fixture_transport::perform(const std::string& query) {
  std::ifstream in(path_, std::ios::binary);
  if (!in) {
    throw std::runtime_error("fixture_transport: cannot open " + path_);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  std::string content = buf.str();
  std::size_t nl = content.find('\n');
  std::string recorded = nl == std::string::npos ? content : content.substr(0, nl);
  if (recorded != query) {
    throw std::runtime_error("fixture_transport: " + path_ +
                             " records a different query: " + recorded);
  }
  std::string response = nl == std::string::npos ? "" : content.substr(nl + 1);
  return {query, response, exchange_source::fixture, path_};
}

live_transport::live_transport(std::string endpoint, int timeout_seconds)
    : endpoint_(std::move(endpoint)), timeout_seconds_(timeout_seconds) {}

external_exchange live_transport::perform(const std::string& query) {
  std::string base = endpoint_;
  std::string path = "/";
  std::size_t scheme = endpoint_.find("://");
  std::size_t slash =
      endpoint_.find('/', scheme == std::string::npos ? 0 : scheme + 3);
  if (slash != std::string::npos) {
    base = endpoint_.substr(0, slash);
    path = endpoint_.substr(slash);
  }
  httplib::Client client(base);
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  client.set_write_timeout(timeout_seconds_, 0);
  httplib::Result res = client.Post(path, query, "text/plain");
  if (!res) {
    throw std::runtime_error("live_transport: exchange with " + endpoint_ +
                             " failed (error " +
                             std::to_string(static_cast<int>(res.error())) + ")");
  }
  if (res->status != 200) {
    throw std::runtime_error("live_transport: " + endpoint_ + " answered status " +
                             std::to_string(res->status));
  }
  return {query, res->body, exchange_source::live, endpoint_};
}

certified_factorization_result certified_factorization(const Int& n,
                                                       certify_transport& transport) {
  /* matcher stage: produce the external query */
  std::string query = render_factor_query(n);
  /* reify stage: one blocking exchange */
  external_exchange exchange = transport.perform(query);
  /* convert stage: parse the raw response */
  std::vector<std::pair<Int, Int>> factors = parse_factor_response(exchange.raw_response);
  /* validator stage: local verification */
  std::string reason;
  if (!verify_certificate(n, factors, &reason)) {
    throw hypothesis_error("certified_factorization: " + reason);
  }
  return {factorization_certificate{n, factors}, exchange};
}

}  // namespace qnt
