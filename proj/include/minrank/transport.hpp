#ifndef MINRANK_TRANSPORT_HPP
#define MINRANK_TRANSPORT_HPP

#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <utility>

namespace minrank {

// Blocking duplex byte stream with per-call deadlines. timeout_ms <= 0 waits
// forever.
class Transport {
 public:
  virtual ~Transport() = default;
  virtual void read_exact(std::span<uint8_t> out, int timeout_ms) = 0;
  virtual void write_all(std::span<const uint8_t> data, int timeout_ms) = 0;
  virtual void shutdown() = 0;
};

// Owns one fd pair (they may be equal, e.g. a socket).
class FdTransport final : public Transport {
 public:
  FdTransport(int read_fd, int write_fd, bool owns_fds);
  ~FdTransport() override;

  void read_exact(std::span<uint8_t> out, int timeout_ms) override;
  void write_all(std::span<const uint8_t> data, int timeout_ms) override;
  void shutdown() override;

 private:
  int read_fd_;
  int write_fd_;
  bool owns_;
};

// "host:port" dialing / listening. Listening on port 0 picks an ephemeral
// port, reported by bound_port().
std::unique_ptr<Transport> tcp_connect(const std::string& address, int timeout_ms);

class TcpListener {
 public:
  explicit TcpListener(const std::string& address);
  ~TcpListener();
  TcpListener(const TcpListener&) = delete;
  TcpListener& operator=(const TcpListener&) = delete;
  uint16_t bound_port() const { return port_; }
  std::unique_ptr<Transport> accept_one(int timeout_ms);

 private:
  int fd_ = -1;
  uint16_t port_ = 0;
};

// stdin/stdout duplex ("-" address).
std::unique_ptr<Transport> stdio_transport();

// Connected socketpair; loopback sessions and tests.
std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> transport_pair();

}  // namespace minrank

#endif
