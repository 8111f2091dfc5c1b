#include <fcntl.h>
#include <poll.h>
#include <signal.h>
#include <sys/wait.h>
#include <unistd.h>

#include <cerrno>
#include <chrono>
#include <cstring>
#include <filesystem>
#include <fstream>

#include "fathom/python_harness.hpp"

namespace fathom::py {

std::string to_string(RunOutcome::Status s) {
    switch (s) {
        case RunOutcome::Status::Pass: return "pass";
        case RunOutcome::Status::AssertionFailed: return "assertion-failed";
        case RunOutcome::Status::RuntimeError: return "runtime-error";
        case RunOutcome::Status::Timeout: return "timeout";
    }
    return "?";
}

namespace {

struct TempFile {
    std::string path;
    explicit TempFile(const std::string& contents) {
        char tmpl[] = "/tmp/fathom_py_XXXXXX";
        int fd = mkstemp(tmpl);
        if (fd < 0) throw EnvError("cannot create temporary file");
        path = tmpl;
        ssize_t n = write(fd, contents.data(), contents.size());
        close(fd);
        if (n != static_cast<ssize_t>(contents.size()))
            throw EnvError("short write to temporary file");
    }
    ~TempFile() { unlink(path.c_str()); }
    TempFile(const TempFile&) = delete;
    TempFile& operator=(const TempFile&) = delete;
};

std::optional<int> traceback_line(const std::string& stderr_text) {
    // last 'File "...", line N' before the AssertionError
    std::size_t pos = stderr_text.rfind(", line ");
    while (pos != std::string::npos) {
        std::size_t num = pos + 7;
        if (num < stderr_text.size() && std::isdigit(static_cast<unsigned char>(stderr_text[num]))) {
            int v = 0;
            while (num < stderr_text.size() &&
                   std::isdigit(static_cast<unsigned char>(stderr_text[num]))) {
                v = v * 10 + (stderr_text[num] - '0');
                num++;
            }
            return v;
        }
        if (pos == 0) break;
        pos = stderr_text.rfind(", line ", pos - 1);
    }
    return std::nullopt;
}

std::string last_nonempty_line(const std::string& text) {
    std::size_t end = text.find_last_not_of("\r\n \t");
    if (end == std::string::npos) return "";
    std::size_t start = text.rfind('\n', end);
    return text.substr(start == std::string::npos ? 0 : start + 1,
                       end - (start == std::string::npos ? 0 : start + 1) + 1);
}

}  // namespace

RunOutcome run_python(const std::string& source, std::chrono::milliseconds timeout,
                      const std::string& interpreter) {
    TempFile file(source);

    int err_pipe[2];   // child stderr
    int exec_pipe[2];  // exec-failure channel (close-on-exec)
    if (pipe(err_pipe) != 0 || pipe(exec_pipe) != 0)
        throw EnvError("pipe() failed");
    fcntl(exec_pipe[1], F_SETFD, FD_CLOEXEC);

    auto started = std::chrono::steady_clock::now();
    pid_t pid = fork();
    if (pid < 0) throw EnvError("fork() failed");
    if (pid == 0) {
        int devnull = open("/dev/null", O_RDWR);
        dup2(devnull, STDIN_FILENO);
        dup2(devnull, STDOUT_FILENO);
        dup2(err_pipe[1], STDERR_FILENO);
        close(err_pipe[0]);
        close(exec_pipe[0]);
        execlp(interpreter.c_str(), interpreter.c_str(), file.path.c_str(),
               static_cast<char*>(nullptr));
        int code = errno;
        ssize_t ignored = write(exec_pipe[1], &code, sizeof code);
        (void)ignored;
        _exit(127);
    }
    close(err_pipe[1]);
    close(exec_pipe[1]);

    // exec failure shows up as a byte on the exec pipe
    int exec_errno = 0;
    {
        ssize_t n = read(exec_pipe[0], &exec_errno, sizeof exec_errno);
        close(exec_pipe[0]);
        if (n > 0) {
            close(err_pipe[0]);
            waitpid(pid, nullptr, 0);
            throw EnvError("cannot execute '" + interpreter +
                           "': " + std::strerror(exec_errno));
        }
    }

    auto deadline = started + timeout;
    std::string err_text;
    bool timed_out = false;
    char buf[4096];
    int status = 0;
    while (true) {
        auto now = std::chrono::steady_clock::now();
        int wait_ms = static_cast<int>(
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - now).count());
        if (wait_ms <= 0) {
            kill(pid, SIGKILL);
            timed_out = true;
            wait_ms = 1000;
        }
        struct pollfd pfd{err_pipe[0], POLLIN, 0};
        int pr = poll(&pfd, 1, wait_ms > 50 ? 50 : wait_ms);
        if (pr > 0) {
            ssize_t n = read(err_pipe[0], buf, sizeof buf);
            if (n > 0) {
                err_text.append(buf, static_cast<std::size_t>(n));
                continue;
            }
            if (n == 0) {  // stderr closed; reap
                waitpid(pid, &status, 0);
                break;
            }
        }
        pid_t done = waitpid(pid, &status, WNOHANG);
        if (done == pid) {
            // drain remaining stderr
            while (true) {
                ssize_t n = read(err_pipe[0], buf, sizeof buf);
                if (n <= 0) break;
                err_text.append(buf, static_cast<std::size_t>(n));
            }
            break;
        }
    }
    close(err_pipe[0]);

    RunOutcome out;
    out.duration_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - started)
                          .count();
    if (timed_out) {
        out.status = RunOutcome::Status::Timeout;
        return out;
    }
    if (WIFEXITED(status) && WEXITSTATUS(status) == 0) {
        out.status = RunOutcome::Status::Pass;
        return out;
    }
    if (err_text.find("AssertionError") != std::string::npos) {
        out.status = RunOutcome::Status::AssertionFailed;
        out.line = traceback_line(err_text);
        return out;
    }
    out.status = RunOutcome::Status::RuntimeError;
    out.message = last_nonempty_line(err_text);
    return out;
}

Validation validate_mutant(const PythonProblem& original, const std::string& mutant_source,
                           std::chrono::milliseconds timeout, const std::string& interpreter) {
    (void)original;  // the caller established that the original passes
    RunOutcome r = run_python(mutant_source, timeout, interpreter);
    Validation v;
    switch (r.status) {
        case RunOutcome::Status::AssertionFailed:
            v.accepted = true;
            return v;
        case RunOutcome::Status::Timeout:
            // hang-accept policy: semantically different, but flagged
            v.accepted = true;
            v.timeout_flagged = true;
            return v;
        case RunOutcome::Status::Pass:
            v.reason = "EquivalentMutant";
            return v;
        case RunOutcome::Status::RuntimeError:
            v.reason = "RuntimeError: " + r.message;
            return v;
    }
    return v;
}

}  // namespace fathom::py
