"""
Spinon and holon dispersions
============================

Sample both bands along Gamma-K-M-Gamma, summarize extrema and optionally
plot (requires matplotlib).
"""
from spinpolaron.dispersion import HolonParams, SpinonParams, band_summary, sample_band
from spinpolaron.lattice import KPath

path = KPath.from_names(["G", "K", "M", "G"], 60)
spinon = SpinonParams(J=1.0, S=0.5)
holon = HolonParams(t=1.0, t_prime=0.2)

bands = {"spinon": sample_band(path, spinon), "holon": sample_band(path, holon)}
for name, params in (("spinon", spinon), ("holon", holon)):
    s = band_summary(params)
    print(f"{name}: min {s.min_value:+.9f} at ({s.argmin_k.kx:+.4f}, {s.argmin_k.ky:+.4f}), "
          f"max {s.max_value:+.9f}, width {s.bandwidth:.9f}")

###############################################################################
try:
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt
except ImportError:
    plt = None

if plt is not None:
    fig, ax = plt.subplots(figsize=(5, 3.5))
    for name, samples in bands.items():
        ax.plot([p.arclength for p in samples], [p.value for p in samples], label=name)
    ax.set_xlabel("path length")
    ax.set_ylabel("energy")
    ax.legend()
    fig.tight_layout()
    fig.savefig("bands.png", dpi=120)
    print("wrote bands.png")
