from .planeLayout import LAYOUT_V1, PlaneLayout, PlaneDescriptor, NUM_PLANES, NUM_POINTS, \
    BOARD_SIZE, PASS_INDEX, LAYOUT_VERSION
from .encoder import encode, encode_batch
from .records import TrainingSample, RecordSet, write_records, read_records
