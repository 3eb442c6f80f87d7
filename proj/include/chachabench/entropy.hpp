#pragma once

#include <cerrno>
#include <cstddef>
#include <cstdint>
#include <stdexcept>

#if defined(__linux__)
#include <fcntl.h>
#include <sys/random.h>
#include <unistd.h>
#endif

#include "bytes.hpp"

namespace chachabench {

struct EntropyError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Source of nonce material. Injectable so tests and harnesses can substitute
// deterministic or failing sources for the operating system generator.
class EntropySource {
public:
    virtual ~EntropySource() = default;
    virtual void fill(std::uint8_t* out, std::size_t len) = 0;

    Nonce96 nonce() {
        Nonce96 n;
        fill(n.data(), n.size());
        return n;
    }
};

// Operating-system CSPRNG. Uses getrandom(2), retrying on EINTR and short
// fills; falls back to /dev/urandom where the syscall is unavailable.
class SystemEntropy final : public EntropySource {
public:
    void fill(std::uint8_t* out, std::size_t len) override {
#if defined(__linux__)
        std::size_t got = 0;
        while (got < len) {
            ssize_t r = ::getrandom(out + got, len - got, 0);
            if (r < 0) {
                if (errno == EINTR) {
                    continue;
                }
                if (errno == ENOSYS) {
                    fill_from_urandom(out + got, len - got);
                    return;
                }
                throw EntropyError("getrandom failed");
            }
            got += static_cast<std::size_t>(r);
        }
#else
        fill_from_urandom(out, len);
#endif
    }

private:
    static void fill_from_urandom(std::uint8_t* out, std::size_t len) {
        int fd = ::open("/dev/urandom", O_RDONLY);
        if (fd < 0) {
            throw EntropyError("cannot open /dev/urandom");
        }
        std::size_t got = 0;
        while (got < len) {
            ssize_t r = ::read(fd, out + got, len - got);
            if (r < 0 && errno == EINTR) {
                continue;
            }
            if (r <= 0) {
                ::close(fd);
                throw EntropyError("cannot read /dev/urandom");
            }
            got += static_cast<std::size_t>(r);
        }
        ::close(fd);
    }
};

} // namespace chachabench
