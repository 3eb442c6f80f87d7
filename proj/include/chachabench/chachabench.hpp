#pragma once

// ChaCha20-Poly1305 AEAD (RFC 8439), a self-describing message envelope, and
// a phase-timed latency harness with budget verdicts for control-system
// traffic classes. Header-only; include this or the individual headers.

#include "aead.hpp"
#include "bench/budget.hpp"
#include "bench/clock.hpp"
#include "bench/probe.hpp"
#include "bench/report.hpp"
#include "bench/runner.hpp"
#include "bench/stats.hpp"
#include "bytes.hpp"
#include "chacha20.hpp"
#include "entropy.hpp"
#include "envelope.hpp"
#include "poly1305.hpp"
#include "selftest.hpp"
