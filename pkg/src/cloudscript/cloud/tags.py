import enum


class Tag(enum.IntEnum):
    BROKER_START = 1
    VM_CREATE = 2
    VM_CREATE_ACK = 3
    VM_DESTROY = 4
    CLOUDLET_SUBMIT = 5
    CLOUDLET_RETURN = 6
    DC_UPDATE = 7
