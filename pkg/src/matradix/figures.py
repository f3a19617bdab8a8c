"""Matplotlib renderings of rasters and tiling multiplicity grids."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402

from .attractor import CoverageReport, Raster, measure_estimate  # noqa: E402


def _extent(origin, dims, h):
    return (origin[0], origin[0] + dims[0] * h,
            origin[1], origin[1] + dims[1] * h)


def attractor_figure(raster: Raster, path: str, title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(6, 6))
    if raster.dim == 2:
        ax.imshow(raster.occupancy.T, origin="lower", cmap="Greys",
                  interpolation="nearest",
                  extent=_extent(raster.origin, raster.dims, raster.h))
        ax.set_aspect("equal")
        ax.set_ylabel("y")
    elif raster.dim == 1:
        xs = [raster.origin[0] + i * raster.h for i in range(raster.dims[0])]
        ax.step(xs, raster.occupancy.astype(int), where="post")
        ax.set_ylim(-0.1, 1.2)
        ax.set_ylabel("occupied")
    else:
        plt.close(fig)
        raise ValueError("figures support 1-D and 2-D rasters only")
    ax.set_xlabel("x")
    label = title or "attractor"
    ax.set_title(f"{label}  (cells={int(raster.occupancy.sum())}, "
                 f"measure~{measure_estimate(raster):.3f})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def multiplicity_figure(report: CoverageReport, path: str,
                        title: str | None = None) -> None:
    fig, ax = plt.subplots(figsize=(6, 5))
    grid = report.multiplicity
    h = report.cell_size
    if grid.ndim == 2:
        im = ax.imshow(grid.T, origin="lower", cmap="viridis",
                       interpolation="nearest",
                       vmin=0, vmax=max(2, report.max_multiplicity),
                       extent=_extent(report.window_origin,
                                      report.window_dims, h))
        ax.set_aspect("equal")
        fig.colorbar(im, ax=ax, label="covering multiplicity")
        ax.set_ylabel("y")
    elif grid.ndim == 1:
        xs = [report.window_origin[0] + i * h for i in range(len(grid))]
        ax.step(xs, grid, where="post")
        ax.set_ylabel("covering multiplicity")
    else:
        plt.close(fig)
        raise ValueError("figures support 1-D and 2-D grids only")
    ax.set_xlabel("x")
    label = title or "tiling"
    verdict = "certified" if report.certified else "not certified"
    ax.set_title(f"{label} by {report.lattice.describe()}: "
                 f"mean={report.mean_multiplicity:.3f} ({verdict})")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
