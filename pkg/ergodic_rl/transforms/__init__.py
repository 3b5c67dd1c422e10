from ergodic_rl.transforms.loess import LoessConfig, SmoothFit, loess_fit
from ergodic_rl.transforms.scatter import ScatterSet, build_scatter
from ergodic_rl.transforms.transform_learning import transform_increments, \
    learn_transformation, learn_and_train
from ergodic_rl.transforms.transformation_curve import TransformationCurve, \
    integrate_transformation, read_transformation_csv
