#include "cfevrp/subprocess.hpp"

#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <sstream>

namespace cfevrp {

std::vector<std::string> split_command(const std::string& command) {
  std::istringstream in(command);
  std::vector<std::string> parts;
  std::string part;
  while (in >> part) parts.push_back(part);
  return parts;
}

RunResult run_process(const std::vector<std::string>& argv,
                      double timeout_seconds) {
  RunResult result;
  if (argv.empty()) return result;

  int out_pipe[2];
  int err_pipe[2];
  if (pipe(out_pipe) != 0) return result;
  if (pipe(err_pipe) != 0) {
    close(out_pipe[0]);
    close(out_pipe[1]);
    return result;
  }

  const auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0) {
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close(fd);
    return result;
  }

  if (pid == 0) {
    // Child: own process group so a timeout kill reaps helper threads too.
    setpgid(0, 0);
    dup2(out_pipe[1], STDOUT_FILENO);
    dup2(err_pipe[1], STDERR_FILENO);
    for (int fd : {out_pipe[0], out_pipe[1], err_pipe[0], err_pipe[1]}) close(fd);
    std::vector<char*> args;
    args.reserve(argv.size() + 1);
    for (const std::string& a : argv) args.push_back(const_cast<char*>(a.c_str()));
    args.push_back(nullptr);
    execvp(args[0], args.data());
    const char* msg = "exec failed: ";
    (void)!write(STDERR_FILENO, msg, strlen(msg));
    (void)!write(STDERR_FILENO, args[0], strlen(args[0]));
    (void)!write(STDERR_FILENO, "\n", 1);
    _exit(127);
  }

  close(out_pipe[1]);
  close(err_pipe[1]);

  struct pollfd fds[2];
  fds[0] = {out_pipe[0], POLLIN, 0};
  fds[1] = {err_pipe[0], POLLIN, 0};
  std::string* sinks[2] = {&result.out, &result.err};
  bool open_fd[2] = {true, true};
  char buffer[65536];

  auto elapsed = [&]() {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start)
        .count();
  };

  while (open_fd[0] || open_fd[1]) {
    int wait_ms = -1;
    if (timeout_seconds > 0) {
      double remaining = timeout_seconds - elapsed();
      if (remaining <= 0) {
        kill(-pid, SIGKILL);
        result.timed_out = true;
        break;
      }
      wait_ms = static_cast<int>(remaining * 1000.0) + 1;
    }
    fds[0].fd = open_fd[0] ? out_pipe[0] : -1;
    fds[1].fd = open_fd[1] ? err_pipe[0] : -1;
    int rc = poll(fds, 2, wait_ms);
    if (rc < 0) {
      if (errno == EINTR) continue;
      break;
    }
    if (rc == 0) continue;  // loop re-checks the deadline
    for (int s = 0; s < 2; ++s) {
      if (!open_fd[s] || fds[s].revents == 0) continue;
      ssize_t got = read(fds[s].fd, buffer, sizeof(buffer));
      if (got > 0) {
        sinks[s]->append(buffer, static_cast<std::size_t>(got));
      } else {
        close(fds[s].fd);
        open_fd[s] = false;
      }
    }
  }
  if (open_fd[0]) close(out_pipe[0]);
  if (open_fd[1]) close(err_pipe[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  result.elapsed_seconds = elapsed();
  if (result.timed_out) {
    result.exit_code = -1;
  } else if (WIFEXITED(status)) {
    result.exit_code = WEXITSTATUS(status);
  } else {
    result.exit_code = -1;
  }
  return result;
}

}  // namespace cfevrp
