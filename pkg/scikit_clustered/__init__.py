"""
Scikit-Clustered is a Scientific ToolKit for supervised learning with clustering constraints.
"""
from .models.partition import Partition
from .models.dataset import Dataset, load_csv
from .models.clustered import ClusteredLinearModel, SparseClusteredModel, cluster_summary
from .solvers.projected_gradient import ProjectedGradient, pgd_fit
from .solvers.conditional_gradient import ConditionalGradient, cg_fit
from .projections.clustered import project_clustered
from .projections.sparse import project_sparse_clustered

__version__ = "0.0.1"

__all__ = ["Partition", "Dataset", "load_csv", "ClusteredLinearModel", "SparseClusteredModel",
           "cluster_summary", "ProjectedGradient", "pgd_fit", "ConditionalGradient", "cg_fit",
           "project_clustered", "project_sparse_clustered", "__version__"]
