"""Homology of windowed modules via explicit projective resolutions."""

from .degrees import (NEG_INF, H0, Degrees, GeneticVerdict, HomologyTable, KoszulPreconditionError,
                      KoszulVerdict, degree_from_json, degree_json, degrees, genetic_check, h0,
                      homology_dims, initial_degree, koszul_check, top_degree, torsion_degree,
                      torsion_part_dims)
from .engine import (GENERIC, MINIMAL, Cover, FreeResolution, ResolutionError, ResolutionStep, Stage,
                     choose_mode, cover, h0_dims, homology_dims_raw, kernel_stage, resolution, syzygy)
from .induced import GroupRep, InducedModule, RegularRep


def free_cover(V, mode: str | None = None) -> ResolutionStep:
    """Step 0 of a resolution: the free module P^0 and the augmentation P^0 → V."""
    return resolution(V, 0, mode).steps[0]


__all__ = ["GENERIC", "H0", "MINIMAL", "NEG_INF", "Cover", "Degrees", "FreeResolution", "GeneticVerdict",
           "GroupRep", "HomologyTable", "InducedModule", "KoszulPreconditionError", "KoszulVerdict",
           "RegularRep", "ResolutionError", "ResolutionStep", "Stage", "choose_mode", "cover", "degree_from_json",
           "degree_json", "degrees", "free_cover", "genetic_check", "h0", "h0_dims", "homology_dims",
           "homology_dims_raw", "initial_degree", "kernel_stage", "koszul_check", "resolution", "syzygy",
           "top_degree", "torsion_degree", "torsion_part_dims"]
