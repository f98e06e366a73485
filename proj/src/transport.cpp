#include "minrank/transport.hpp"

#include <netdb.h>
#include <netinet/in.h>
#include <netinet/tcp.h>
#include <poll.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>

#include "minrank/errors.hpp"

namespace minrank {

namespace {

using Clock = std::chrono::steady_clock;

int remaining_ms(Clock::time_point deadline, bool has_deadline) {
  if (!has_deadline) return -1;
  const auto left =
      std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now())
          .count();
  if (left <= 0) return 0;
  return int(std::min<long long>(left, 1 << 30));
}

void wait_ready(int fd, short events, Clock::time_point deadline, bool has_deadline) {
  for (;;) {
    struct pollfd pfd{fd, events, 0};
    const int wait = remaining_ms(deadline, has_deadline);
    if (has_deadline && wait == 0)
      throw Error(ErrorCode::timeout, "transport deadline elapsed");
    const int rc = ::poll(&pfd, 1, wait);
    if (rc > 0) return;
    if (rc == 0) {
      if (has_deadline) throw Error(ErrorCode::timeout, "transport deadline elapsed");
      continue;
    }
    if (errno == EINTR) continue;
    throw Error(ErrorCode::io_failure, std::string("poll: ") + std::strerror(errno));
  }
}

std::pair<std::string, std::string> split_host_port(const std::string& address) {
  const auto pos = address.rfind(':');
  if (pos == std::string::npos || pos == 0 || pos + 1 == address.size())
    throw Error(ErrorCode::invalid_argument, "address must be host:port");
  return {address.substr(0, pos), address.substr(pos + 1)};
}

struct AddrInfoHolder {
  addrinfo* list = nullptr;
  ~AddrInfoHolder() {
    if (list) ::freeaddrinfo(list);
  }
};

}  // namespace

FdTransport::FdTransport(int read_fd, int write_fd, bool owns_fds)
    : read_fd_(read_fd), write_fd_(write_fd), owns_(owns_fds) {}

FdTransport::~FdTransport() {
  if (owns_) {
    if (read_fd_ >= 0) ::close(read_fd_);
    if (write_fd_ >= 0 && write_fd_ != read_fd_) ::close(write_fd_);
  }
}

void FdTransport::read_exact(std::span<uint8_t> out, int timeout_ms) {
  const bool has_deadline = timeout_ms > 0;
  const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
  size_t got = 0;
  while (got < out.size()) {
    wait_ready(read_fd_, POLLIN, deadline, has_deadline);
    const ssize_t n = ::read(read_fd_, out.data() + got, out.size() - got);
    if (n == 0) throw Error(ErrorCode::transport_closed, "peer closed the stream");
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      if (errno == ECONNRESET)
        throw Error(ErrorCode::transport_closed, "peer closed the stream");
      throw Error(ErrorCode::io_failure, std::string("read: ") + std::strerror(errno));
    }
    got += size_t(n);
  }
}

void FdTransport::write_all(std::span<const uint8_t> data, int timeout_ms) {
  const bool has_deadline = timeout_ms > 0;
  const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
  size_t sent = 0;
  while (sent < data.size()) {
    wait_ready(write_fd_, POLLOUT, deadline, has_deadline);
    // sockets get MSG_NOSIGNAL so a vanished peer reports EPIPE instead of
    // raising SIGPIPE; pipes and files fall back to write()
    ssize_t n = ::send(write_fd_, data.data() + sent, data.size() - sent,
                       MSG_NOSIGNAL);
    if (n < 0 && errno == ENOTSOCK)
      n = ::write(write_fd_, data.data() + sent, data.size() - sent);
    if (n < 0) {
      if (errno == EINTR || errno == EAGAIN) continue;
      if (errno == EPIPE || errno == ECONNRESET)
        throw Error(ErrorCode::transport_closed, "peer closed the stream");
      throw Error(ErrorCode::io_failure, std::string("write: ") + std::strerror(errno));
    }
    sent += size_t(n);
  }
}

void FdTransport::shutdown() {
  if (read_fd_ >= 0 && read_fd_ == write_fd_) ::shutdown(read_fd_, SHUT_RDWR);
}

std::unique_ptr<Transport> tcp_connect(const std::string& address, int timeout_ms) {
  auto [host, port] = split_host_port(address);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  AddrInfoHolder res;
  if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &res.list) != 0)
    throw Error(ErrorCode::io_failure, "cannot resolve " + address);
  int last_errno = 0;
  for (addrinfo* ai = res.list; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    if (::connect(fd, ai->ai_addr, ai->ai_addrlen) == 0) {
      const int one = 1;
      ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
      (void)timeout_ms;
      return std::make_unique<FdTransport>(fd, fd, true);
    }
    last_errno = errno;
    ::close(fd);
  }
  throw Error(ErrorCode::io_failure,
              "cannot connect to " + address + ": " + std::strerror(last_errno));
}

TcpListener::TcpListener(const std::string& address) {
  auto [host, port] = split_host_port(address);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  AddrInfoHolder res;
  if (::getaddrinfo(host.c_str(), port.c_str(), &hints, &res.list) != 0)
    throw Error(ErrorCode::io_failure, "cannot resolve " + address);
  int last_errno = 0;
  for (addrinfo* ai = res.list; ai; ai = ai->ai_next) {
    const int fd = ::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol);
    if (fd < 0) {
      last_errno = errno;
      continue;
    }
    const int one = 1;
    ::setsockopt(fd, SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(fd, ai->ai_addr, ai->ai_addrlen) == 0 && ::listen(fd, 4) == 0) {
      sockaddr_storage ss{};
      socklen_t slen = sizeof ss;
      if (::getsockname(fd, reinterpret_cast<sockaddr*>(&ss), &slen) == 0) {
        if (ss.ss_family == AF_INET)
          port_ = ntohs(reinterpret_cast<sockaddr_in*>(&ss)->sin_port);
        else if (ss.ss_family == AF_INET6)
          port_ = ntohs(reinterpret_cast<sockaddr_in6*>(&ss)->sin6_port);
      }
      fd_ = fd;
      return;
    }
    last_errno = errno;
    ::close(fd);
  }
  throw Error(ErrorCode::io_failure,
              "cannot listen on " + address + ": " + std::strerror(last_errno));
}

TcpListener::~TcpListener() {
  if (fd_ >= 0) ::close(fd_);
}

std::unique_ptr<Transport> TcpListener::accept_one(int timeout_ms) {
  const bool has_deadline = timeout_ms > 0;
  const auto deadline = Clock::now() + std::chrono::milliseconds(timeout_ms);
  wait_ready(fd_, POLLIN, deadline, has_deadline);
  const int fd = ::accept(fd_, nullptr, nullptr);
  if (fd < 0)
    throw Error(ErrorCode::io_failure, std::string("accept: ") + std::strerror(errno));
  const int one = 1;
  ::setsockopt(fd, IPPROTO_TCP, TCP_NODELAY, &one, sizeof one);
  return std::make_unique<FdTransport>(fd, fd, true);
}

std::unique_ptr<Transport> stdio_transport() {
  return std::make_unique<FdTransport>(0, 1, false);
}

std::pair<std::unique_ptr<Transport>, std::unique_ptr<Transport>> transport_pair() {
  int fds[2];
  if (::socketpair(AF_UNIX, SOCK_STREAM, 0, fds) != 0)
    throw Error(ErrorCode::io_failure, std::string("socketpair: ") + std::strerror(errno));
  return {std::make_unique<FdTransport>(fds[0], fds[0], true),
          std::make_unique<FdTransport>(fds[1], fds[1], true)};
}

}  // namespace minrank
