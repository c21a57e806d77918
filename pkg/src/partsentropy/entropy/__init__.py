"""Entropy functionals: discrete, quantum, continuous, relative, conditional."""

from .boltzmann import (
    BoltzmannSystem,
    boltzmann_configurational_pdf,
    boltzmann_partition_function,
)
from .io import pdf_from_json, pdf_to_csv, pdf_to_json
from .partitions import Partition, grid_partition_2d, measure_information, partition_entropy
from .pdfs import (
    ConditionalEntropies,
    DiscretePdf,
    GridPdf,
    conditional_entropy,
    continuous_entropy,
    convolve_finite,
    discretize_density,
    kl_divergence,
    self_information,
    shannon_entropy,
    zfun,
)
from .quadrature import (
    ProductGrid,
    box_grid,
    continuous_entropy_refined,
    domain_grid,
    domain_product_grid,
    gauss_legendre,
    grid_pdf_from_density,
    so2_grid,
    so3_grid,
    uniform_grid_pdf,
)
from .quantum import DensityMatrix, von_neumann_entropy

__all__ = [
    "BoltzmannSystem",
    "ConditionalEntropies",
    "DensityMatrix",
    "DiscretePdf",
    "GridPdf",
    "Partition",
    "ProductGrid",
    "boltzmann_configurational_pdf",
    "boltzmann_partition_function",
    "box_grid",
    "conditional_entropy",
    "continuous_entropy",
    "continuous_entropy_refined",
    "convolve_finite",
    "discretize_density",
    "domain_grid",
    "domain_product_grid",
    "gauss_legendre",
    "grid_partition_2d",
    "grid_pdf_from_density",
    "kl_divergence",
    "measure_information",
    "partition_entropy",
    "pdf_from_json",
    "pdf_to_csv",
    "pdf_to_json",
    "self_information",
    "shannon_entropy",
    "so2_grid",
    "so3_grid",
    "uniform_grid_pdf",
    "von_neumann_entropy",
    "zfun",
]
