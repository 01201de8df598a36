from .base import WaveModel, well_center
from .excited import ExcitedStateSplitModel
from .ground import GroundStateSplitModel

__all__ = ["ExcitedStateSplitModel", "GroundStateSplitModel", "WaveModel", "well_center"]
