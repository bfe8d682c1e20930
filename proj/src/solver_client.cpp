#include "eta/solver_client.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cctype>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "lia/sexpr.hpp"

namespace eta {

uint64_t fnv1a64(const std::string& data) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

SolverClient::SolverClient(SolverConfig config) : config_(std::move(config)) {
  signal(SIGPIPE, SIG_IGN);
}

const SolverResponse& SolverClient::check(const std::string& script) {
  {
    std::lock_guard<std::mutex> lock(mutex_);
    auto it = cache_.find(script);
    if (it != cache_.end()) {
      ++cache_hits_;
      return it->second;
    }
    ++calls_;
  }
  if (!config_.dump_dir.empty()) {
    std::filesystem::create_directories(config_.dump_dir);
    char name[32];
    snprintf(name, sizeof name, "q%016llx.smt2",
             static_cast<unsigned long long>(fnv1a64(script)));
    std::ofstream out(std::filesystem::path(config_.dump_dir) / name);
    out << script;
  }
  SolverResponse response = run_once(script);
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_.emplace(script, std::move(response)).first->second;
}

size_t SolverClient::calls() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return calls_;
}

size_t SolverClient::cache_hits() const {
  std::lock_guard<std::mutex> lock(mutex_);
  return cache_hits_;
}

namespace {

struct Pipe {
  int fds[2] = {-1, -1};
  Pipe() {
    if (pipe(fds) != 0) throw std::runtime_error("pipe() failed");
  }
  ~Pipe() {
    close_read();
    close_write();
  }
  void close_read() {
    if (fds[0] >= 0) close(fds[0]);
    fds[0] = -1;
  }
  void close_write() {
    if (fds[1] >= 0) close(fds[1]);
    fds[1] = -1;
  }
};

void collect_define_funs(const lia::Sexpr& s, std::map<std::string, Int>& model) {
  if (s.kind != lia::Sexpr::Kind::List) return;
  if (s.items.size() >= 5 && s.items[0].is_atom("define-fun") &&
      s.items[1].kind == lia::Sexpr::Kind::Atom) {
    const lia::Sexpr& value = s.items[4];
    Int v;
    bool ok = false;
    if (value.kind == lia::Sexpr::Kind::Atom) {
      try {
        v = Int(value.atom);
        ok = true;
      } catch (const std::invalid_argument&) {
      }
    } else if (value.items.size() == 2 && value.items[0].is_atom("-") &&
               value.items[1].kind == lia::Sexpr::Kind::Atom) {
      try {
        v = -Int(value.items[1].atom);
        ok = true;
      } catch (const std::invalid_argument&) {
      }
    }
    if (ok) {
      model[s.items[1].atom] = v;
      return;
    }
  }
  for (const lia::Sexpr& item : s.items) collect_define_funs(item, model);
}

}  // namespace

SolverResponse SolverClient::run_once(const std::string& script) {
  Pipe to_child, from_child;

  pid_t pid = fork();
  if (pid < 0) throw SolverFailure("fork() failed", script);
  if (pid == 0) {
    dup2(to_child.fds[0], STDIN_FILENO);
    dup2(from_child.fds[1], STDOUT_FILENO);
    dup2(from_child.fds[1], STDERR_FILENO);
    to_child.close_read();
    to_child.close_write();
    from_child.close_read();
    from_child.close_write();
    std::vector<char*> argv;
    argv.push_back(const_cast<char*>(config_.binary.c_str()));
    for (const std::string& a : config_.args) argv.push_back(const_cast<char*>(a.c_str()));
    argv.push_back(nullptr);
    execvp(config_.binary.c_str(), argv.data());
    _exit(127);
  }

  to_child.close_read();
  from_child.close_write();

  // The solver reads its whole input before answering, so a plain
  // write-all-then-read-all sequence cannot deadlock.
  size_t written = 0;
  bool write_ok = true;
  while (written < script.size()) {
    ssize_t n = write(to_child.fds[1], script.data() + written, script.size() - written);
    if (n <= 0) {
      write_ok = false;
      break;
    }
    written += static_cast<size_t>(n);
  }
  to_child.close_write();

  auto deadline = std::chrono::steady_clock::now() +
                  std::chrono::duration<double>(config_.timeout_seconds);
  std::string output;
  char buffer[4096];
  bool timed_out = false;
  for (;;) {
    auto remaining = std::chrono::duration_cast<std::chrono::milliseconds>(
        deadline - std::chrono::steady_clock::now());
    if (remaining.count() <= 0) {
      timed_out = true;
      break;
    }
    struct pollfd pfd = {from_child.fds[0], POLLIN, 0};
    int rc = poll(&pfd, 1, static_cast<int>(remaining.count()));
    if (rc == 0) {
      timed_out = true;
      break;
    }
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    ssize_t n = read(from_child.fds[0], buffer, sizeof buffer);
    if (n < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (n == 0) break;
    output.append(buffer, static_cast<size_t>(n));
  }

  if (timed_out) {
    kill(pid, SIGKILL);
    waitpid(pid, nullptr, 0);
    throw SolverFailure("solver timeout after " +
                            std::to_string(config_.timeout_seconds) + "s",
                        script);
  }
  int status = 0;
  waitpid(pid, &status, 0);

  // First non-blank line decides the verdict.
  SolverResponse response;
  response.raw = output;
  size_t pos = 0;
  std::string verdict;
  while (pos < output.size()) {
    size_t eol = output.find('\n', pos);
    if (eol == std::string::npos) eol = output.size();
    std::string line = output.substr(pos, eol - pos);
    size_t a = line.find_first_not_of(" \t\r");
    if (a != std::string::npos) {
      size_t b = line.find_last_not_of(" \t\r");
      verdict = line.substr(a, b - a + 1);
      pos = eol + 1;
      break;
    }
    pos = eol + 1;
  }

  if (verdict == "unsat") {
    response.kind = SolverResponse::Kind::Unsat;
    return response;
  }
  if (verdict == "unknown") {
    response.kind = SolverResponse::Kind::Unknown;
    return response;
  }
  if (verdict != "sat") {
    if (!write_ok)
      throw SolverFailure("could not write to solver '" + config_.binary + "'", script);
    throw SolverFailure(
        "unexpected solver output" +
            (output.empty() ? std::string(" (empty)") : ": " + output.substr(0, 200)),
        script);
  }

  response.kind = SolverResponse::Kind::Sat;
  std::string rest = output.substr(pos);
  if (!rest.empty()) {
    try {
      for (const lia::Sexpr& s : lia::parse_sexprs(rest))
        collect_define_funs(s, response.model);
    } catch (const lia::SexprError& e) {
      throw SolverFailure(std::string("unparseable model: ") + e.what(), script);
    }
  }
  return response;
}

}  // namespace eta
