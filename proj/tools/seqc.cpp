/* Copyright 2026 The seqc Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

// seqc: command-line driver.
//
//   seqc run <file> [--events <file>] [--interactive] [--trace]
//                   [--max-unfold N] [--max-moves N] [--explain-stability]
//   seqc check <file> [--explain-stability]
//   seqc serve <file> [--listen <host:port>] [--once]
//   seqc fmt <file> [--addresses]
//
// Exit codes: 0 succeeded, 1 failed, 2 stable and waiting, 3 usage or
// parse error.

#include <netdb.h>
#include <sys/socket.h>
#include <unistd.h>

#include <cerrno>
#include <cstring>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>

#include "CLI11.hpp"
#include "seqc/seqc.hpp"

namespace {

constexpr int kExitUsage = 3;

std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void report(const std::string& file, const seqc::Error& e) {
  std::cerr << file << ":";
  if (e.pos().line != 0) {
    std::cerr << e.pos().line << ":" << e.pos().column << ":";
  }
  std::cerr << " error: " << seqc::error_code_name(e.code()) << ": "
            << e.detail() << "\n";
}

/// Loads and parses a program file, reporting problems on stderr.
std::optional<seqc::Program> load_program(const std::string& file) {
  auto text = read_file(file);
  if (!text) {
    std::cerr << file << ": error: cannot read file\n";
    return std::nullopt;
  }
  try {
    return seqc::parse_program(*text);
  } catch (const seqc::Error& e) {
    report(file, e);
    return std::nullopt;
  }
}

/// Scripted events first, then (optionally) the terminal.
class CliSource : public seqc::EventSource {
 public:
  CliSource(std::vector<seqc::Event> scripted, bool interactive)
      : scripted_(std::move(scripted)) {
    if (interactive) interactive_.emplace(std::cin, std::cerr);
  }

  seqc::SourceKind kind() const override {
    return interactive_ ? seqc::SourceKind::Interactive
                        : seqc::SourceKind::Scripted;
  }

  std::optional<seqc::Event> read(const seqc::RunState& state) override {
    if (scripted_.remaining() > 0) return scripted_.read(state);
    if (interactive_) return interactive_->read(state);
    return std::nullopt;
  }

 private:
  seqc::ScriptedSource scripted_;
  std::optional<seqc::InteractiveSource> interactive_;
};

class CliObserver : public seqc::RunObserver {
 public:
  CliObserver(bool trace, bool explain, seqc::EngineLimits limits)
      : trace_(trace), explain_(explain), limits_(limits), tracer_(std::cerr) {}

  void on_status(const seqc::RunState& s) override {
    if (explain_) {
      try {
        std::cerr << seqc::format_report(
            seqc::explain_stability(s.program, s.goal, s.theta, limits_));
      } catch (const seqc::Error& e) {
        std::cerr << "stability: " << e.what() << "\n";
      }
    }
    if (trace_) tracer_.on_status(s);
  }

  void on_move(const seqc::RunState& s, const seqc::MoveOutcome& m) override {
    for (const auto& line : m.output) std::cout << line << "\n" << std::flush;
    if (trace_) tracer_.on_move(s, m);
  }

  void on_event(const seqc::RunState& s, const seqc::SwitchResult& r) override {
    if (trace_) tracer_.on_event(s, r);
  }

 private:
  bool trace_;
  bool explain_;
  seqc::EngineLimits limits_;
  seqc::TraceObserver tracer_;
};

int cmd_run(const std::string& file, const std::string& events_file,
            bool interactive, bool trace, bool explain,
            const seqc::Limits& limits) {
  auto prog = load_program(file);
  if (!prog) return kExitUsage;
  std::vector<seqc::Event> events;
  if (!events_file.empty()) {
    auto text = read_file(events_file);
    if (!text) {
      std::cerr << events_file << ": error: cannot read file\n";
      return kExitUsage;
    }
    try {
      events = seqc::parse_event_script(*text, prog->decls);
    } catch (const seqc::Error& e) {
      report(events_file, e);
      return kExitUsage;
    }
  }
  CliSource source(std::move(events), interactive);
  CliObserver observer(trace, explain, limits.engine());
  seqc::RunResult result = seqc::run(std::move(prog->decls),
                                     std::move(prog->goal), source, limits,
                                     &observer);
  if (result.verdict == seqc::Verdict::Failed) {
    std::cerr << "seqc: run failed: " << result.diagnostic << "\n";
  }
  std::cerr << "verdict: " << seqc::verdict_name(result.verdict) << "\n";
  return seqc::verdict_exit_code(result.verdict);
}

int cmd_check(const std::string& file, bool explain,
              const seqc::Limits& limits) {
  auto prog = load_program(file);
  if (!prog) return kExitUsage;
  try {
    if (explain) {
      std::cout << seqc::format_report(seqc::explain_stability(
          prog->decls, prog->goal, seqc::Subst{}, limits.engine()));
      return 0;
    }
    seqc::Status s = seqc::stable_status(prog->decls, prog->goal,
                                         seqc::Subst{}, limits.engine());
    std::cout << "status: " << seqc::status_name(s) << " ("
              << seqc::status_code(s) << ")\n";
    return 0;
  } catch (const seqc::Error& e) {
    std::cerr << file << ": error: " << e.what() << "\n";
    return 1;
  }
}

int cmd_fmt(const std::string& file, bool addresses) {
  auto prog = load_program(file);
  if (!prog) return kExitUsage;
  if (addresses) {
    std::cout << seqc::list_addresses(prog->decls);
  } else {
    std::cout << seqc::pretty_file(*prog);
  }
  return 0;
}

// --- TCP transport ---------------------------------------------------------

class Socket {
 public:
  explicit Socket(int fd = -1) : fd_(fd) {}
  Socket(const Socket&) = delete;
  Socket& operator=(const Socket&) = delete;
  Socket(Socket&& o) noexcept : fd_(o.fd_) { o.fd_ = -1; }
  ~Socket() {
    if (fd_ >= 0) ::close(fd_);
  }
  int fd() const noexcept { return fd_; }

 private:
  int fd_;
};

bool send_all(int fd, const std::string& data) {
  std::size_t sent = 0;
  while (sent < data.size()) {
    ssize_t n = ::send(fd, data.data() + sent, data.size() - sent, MSG_NOSIGNAL);
    if (n < 0) {
      if (errno == EINTR) continue;
      return false;
    }
    sent += static_cast<std::size_t>(n);
  }
  return true;
}

std::optional<Socket> listen_on(const std::string& addr) {
  auto colon = addr.rfind(':');
  if (colon == std::string::npos) {
    std::cerr << "serve: --listen expects host:port\n";
    return std::nullopt;
  }
  std::string host = addr.substr(0, colon);
  std::string port = addr.substr(colon + 1);
  addrinfo hints{};
  hints.ai_family = AF_UNSPEC;
  hints.ai_socktype = SOCK_STREAM;
  hints.ai_flags = AI_PASSIVE;
  addrinfo* res = nullptr;
  int rc = ::getaddrinfo(host.empty() ? nullptr : host.c_str(), port.c_str(),
                         &hints, &res);
  if (rc != 0) {
    std::cerr << "serve: " << ::gai_strerror(rc) << "\n";
    return std::nullopt;
  }
  std::unique_ptr<addrinfo, decltype(&::freeaddrinfo)> guard(res, ::freeaddrinfo);
  for (addrinfo* ai = res; ai != nullptr; ai = ai->ai_next) {
    Socket s(::socket(ai->ai_family, ai->ai_socktype, ai->ai_protocol));
    if (s.fd() < 0) continue;
    int one = 1;
    ::setsockopt(s.fd(), SOL_SOCKET, SO_REUSEADDR, &one, sizeof one);
    if (::bind(s.fd(), ai->ai_addr, ai->ai_addrlen) == 0 &&
        ::listen(s.fd(), 1) == 0) {
      return s;
    }
  }
  std::cerr << "serve: cannot listen on " << addr << ": "
            << std::strerror(errno) << "\n";
  return std::nullopt;
}

void serve_connection(int fd, const std::string& text,
                      const seqc::Limits& limits) {
  seqc::Session session(text, limits, [fd](const std::string& line) {
    send_all(fd, line + "\n");
  });
  session.start();
  std::string buffer;
  char chunk[4096];
  for (;;) {
    ssize_t n = ::recv(fd, chunk, sizeof chunk, 0);
    if (n < 0 && errno == EINTR) continue;
    if (n <= 0) break;
    buffer.append(chunk, static_cast<std::size_t>(n));
    std::size_t nl;
    while ((nl = buffer.find('\n')) != std::string::npos) {
      std::string line = buffer.substr(0, nl);
      buffer.erase(0, nl + 1);
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (!line.empty()) session.handle_line(line);
    }
  }
}

int cmd_serve(const std::string& file, const std::string& listen, bool once,
              const seqc::Limits& limits) {
  auto text = read_file(file);
  if (!text) {
    std::cerr << file << ": error: cannot read file\n";
    return kExitUsage;
  }
  try {
    (void)seqc::parse_program(*text);
  } catch (const seqc::Error& e) {
    report(file, e);
    return kExitUsage;
  }
  if (listen.empty()) {
    seqc::serve_session(*text, limits, std::cin, std::cout);
    return 0;
  }
  auto server = listen_on(listen);
  if (!server) return kExitUsage;
  std::cerr << "serve: listening on " << listen << "\n";
  do {
    Socket conn(::accept(server->fd(), nullptr, nullptr));
    if (conn.fd() < 0) {
      if (errno == EINTR) continue;
      std::cerr << "serve: accept: " << std::strerror(errno) << "\n";
      return 1;
    }
    serve_connection(conn.fd(), *text, limits);
  } while (!once);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Interpreter for sequential-choice programs"};
  app.require_subcommand(1);

  seqc::Limits limits;
  std::string file;
  std::string events_file;
  std::string listen;
  bool interactive = false;
  bool trace = false;
  bool explain = false;
  bool addresses = false;
  bool once = false;

  auto* run = app.add_subcommand("run", "run a program to its verdict");
  run->add_option("file", file, "program file (.seqc)")->required();
  run->add_option("--events", events_file, "scripted events, one 'esc <path>' per line");
  run->add_flag("--interactive", interactive, "read events from the terminal");
  run->add_flag("--trace", trace, "print STATUS/MOVE/EVENT lines on stderr");
  run->add_option("--max-unfold", limits.max_unfold, "procedure unfolding depth")
      ->check(CLI::PositiveNumber);
  run->add_option("--max-moves", limits.max_moves, "machine move limit")
      ->check(CLI::PositiveNumber);
  run->add_flag("--explain-stability", explain,
                "print the stability report at every step on stderr");

  auto* check = app.add_subcommand("check", "parse and report the initial status");
  check->add_option("file", file, "program file (.seqc)")->required();
  check->add_option("--max-unfold", limits.max_unfold, "procedure unfolding depth")
      ->check(CLI::PositiveNumber);
  check->add_flag("--explain-stability", explain, "print the full report");

  auto* serve = app.add_subcommand("serve", "JSON session protocol");
  serve->add_option("file", file, "program file (.seqc)")->required();
  serve->add_option("--listen", listen, "host:port to listen on instead of stdio");
  serve->add_flag("--once", once, "exit after the first connection closes");
  serve->add_option("--max-unfold", limits.max_unfold, "procedure unfolding depth")
      ->check(CLI::PositiveNumber);
  serve->add_option("--max-moves", limits.max_moves, "machine move limit")
      ->check(CLI::PositiveNumber);

  auto* fmt = app.add_subcommand("fmt", "print the program in canonical form");
  fmt->add_option("file", file, "program file (.seqc)")->required();
  fmt->add_flag("--addresses", addresses, "list choice addresses instead");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : kExitUsage;
  }

  if (*run) return cmd_run(file, events_file, interactive, trace, explain, limits);
  if (*check) return cmd_check(file, explain, limits);
  if (*serve) return cmd_serve(file, listen, once, limits);
  if (*fmt) return cmd_fmt(file, addresses);
  return kExitUsage;
}
