"""
Measuring generation speed and wire size
========================================

Each sample times a batch of generate+serialize calls, then the run sleeps
out the rest of the sampling interval. Durations are per identifier in
microseconds; bandwidth is serialized bits over the batch's elapsed time.
The absolute numbers depend on the machine, the cross-scheme comparison is
the interesting part.

A short run here; the CLI exposes the same thing with the 500 ms / 2420
sample defaults for a full-length session:

    uidlab bench --scheme ulid --samples 2420 --interval-ms 500
"""

from uidlab import (
    BenchConfig,
    IdScheme,
    metrics_filename,
    run_generation_bench,
    serialized_size,
    summarize,
    write_metrics_csv,
)

for scheme in (IdScheme.ULID, IdScheme.UUID_V7, IdScheme.UUID_V4):
    cfg = BenchConfig(
        scheme=scheme,
        sample_interval=0.01,
        total_samples=50,
        ids_per_sample=500,
    )
    samples = run_generation_bench(cfg)
    write_metrics_csv(samples, metrics_filename(scheme))
    stats = summarize(samples)
    print(
        f"{scheme.cli_name:<7} {serialized_size(scheme, 2):>3} bytes/id   "
        f"mean {stats.duration_micros.mean:6.3f} us/id   "
        f"p95 {stats.duration_micros.p95:6.3f} us/id   "
        f"mean {stats.bandwidth_mbps.mean:8.2f} Mbps"
    )

print("\nwrote", ", ".join(metrics_filename(s) for s in IdScheme))
print("combine them with: uidlab report --in metrics_ULID.csv metrics_UUID_V7.csv metrics_UUID_V4.csv")
