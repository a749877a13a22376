from .resample import resample, resampled_length
from .clips import clip_walk, n_clips
from .augment import AugmentationConfig, augment, mirror, rotate, clip_rng
from .pipeline import PreprocessConfig, prepare_walk, encoder_input, encode_clip, to_standard_layout
from .store import save_clips, load_clips, write_index, read_index, clip_plan
