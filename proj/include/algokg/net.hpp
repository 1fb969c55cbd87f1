#ifndef ALGOKG_NET_HPP
#define ALGOKG_NET_HPP

// Pulls in cpp-httplib with TLS enabled; only the CLI needs this header,
// library code takes a Fetcher instead.
#ifndef CPPHTTPLIB_OPENSSL_SUPPORT
#define CPPHTTPLIB_OPENSSL_SUPPORT
#endif

#include <chrono>
#include <memory>
#include <string>
#include <thread>

#include <httplib.h>

#include "algokg/corpus.hpp"
#include "algokg/errors.hpp"
#include "algokg/url.hpp"

namespace algokg {

inline Fetcher make_http_fetcher() {
  return [](const std::string& url) -> std::string {
    Url u = parse_url(url);
    httplib::Client client(u.scheme + "://" + u.host);
    client.set_follow_location(true);
    client.set_connection_timeout(15);
    client.set_read_timeout(30);
    auto res = client.Get(u.path);
    if (!res)
      throw IoError("request failed: " + httplib::to_string(res.error()));
    if (res->status != 200)
      throw IoError("http status " + std::to_string(res->status));
    return res->body;
  };
}

/// Sequential-by-contract politeness: sleeps before every fetch after the
/// first one.
inline Fetcher make_polite_fetcher(Fetcher inner, double delay_seconds) {
  auto first = std::make_shared<bool>(true);
  return [inner = std::move(inner), delay_seconds,
          first](const std::string& url) -> std::string {
    if (!*first && delay_seconds > 0)
      std::this_thread::sleep_for(
          std::chrono::duration<double>(delay_seconds));
    *first = false;
    return inner(url);
  };
}

}  // namespace algokg

#endif  // ALGOKG_NET_HPP
