from .BoxSpaceController import BoxSpaceController
