#include "nullforge/subprocess.hpp"

#include <cerrno>
#include <chrono>
#include <csignal>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

#include <fcntl.h>
#include <poll.h>
#include <sys/wait.h>
#include <unistd.h>

namespace nullforge {

CommandResult run_command(const std::string& command, const std::filesystem::path& cwd,
                          const std::vector<std::pair<std::string, std::string>>& extra_env,
                          double timeout_seconds) {
  int pipefd[2];
  if (pipe(pipefd) != 0)
    throw std::runtime_error("pipe() failed: " + std::string(strerror(errno)));

  auto start = std::chrono::steady_clock::now();
  pid_t pid = fork();
  if (pid < 0)
    throw std::runtime_error("fork() failed: " + std::string(strerror(errno)));

  if (pid == 0) {
    // child: own process group so a timeout kill reaps the whole build
    setpgid(0, 0);
    close(pipefd[0]);
    dup2(pipefd[1], STDOUT_FILENO);
    dup2(pipefd[1], STDERR_FILENO);
    close(pipefd[1]);
    if (chdir(cwd.c_str()) != 0)
      _exit(127);
    for (const auto& [k, v] : extra_env)
      setenv(k.c_str(), v.c_str(), 1);
    execl("/bin/sh", "sh", "-c", command.c_str(), static_cast<char*>(nullptr));
    _exit(127);
  }

  close(pipefd[1]);
  CommandResult result;
  char buf[4096];
  bool killed = false;
  struct pollfd pfd {};
  pfd.fd = pipefd[0];
  pfd.events = POLLIN;

  while (true) {
    int wait_ms = 200;
    if (timeout_seconds > 0) {
      double elapsed =
          std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      if (!killed && elapsed > timeout_seconds) {
        kill(-pid, SIGKILL);
        killed = true;
      }
    }
    int rc = poll(&pfd, 1, wait_ms);
    if (rc > 0) {
      ssize_t n = read(pipefd[0], buf, sizeof(buf));
      if (n > 0) {
        result.output.append(buf, static_cast<size_t>(n));
        continue;
      }
      if (n == 0)
        break; // EOF: child (and its children) closed the pipe
      if (errno != EINTR && errno != EAGAIN)
        break;
    }
  }
  close(pipefd[0]);

  int status = 0;
  waitpid(pid, &status, 0);
  result.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.timed_out = killed;
  if (WIFEXITED(status))
    result.exit_code = WEXITSTATUS(status);
  else if (WIFSIGNALED(status))
    result.exit_code = 128 + WTERMSIG(status);
  return result;
}

} // namespace nullforge
