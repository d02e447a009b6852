"""Reference values for the golden tests."""

Q_VALUES = [25, 50, 75, 100, 125, 150, 175, 200, 225, 250]
DELTA_VALUES = [0.025, 0.05, 0.075, 0.1, 0.125, 0.15, 0.175, 0.2, 0.225, 0.25]

# retention accuracy vs activation period Q; beta=640, N=64, delta=0.1
RETENTION_VS_Q = {
    0.064: [1.0] * 10,
    0.128: [
        0.999762609272245, 0.988942317700791, 0.929525610738677, 0.796366491479784, 0.614651891004524,
        0.429674476897165, 0.27480057247704, 0.163655874602711, 0.0916144103948964, 0.0485057478519858,
    ],
    0.192: [
        0.998733464494701, 0.957203299090471, 0.797208936857203, 0.552197733299719, 0.321540069713027,
        0.163655874602762, 0.0746001361639704, 0.0311297461816668, 0.012091636089855, 0.00439276862615606,
    ],
}

# retention accuracy vs delta; Q=50, tau=0.128, N=64
RETENTION_VS_DELTA = {
    320.0: [
        0.0420554596539958, 0.283240153671155, 0.47013677689849, 0.797208936857203, 0.951147224138236,
        0.979608520639117, 0.997364343461674, 0.999176265861783, 0.999937968216936, 0.999996624430761,
    ],
    480.0: [
        0.158380497342506, 0.591598007164909, 0.776556589827224, 0.957203299090467, 0.995160345217079,
        0.998633598730665, 0.999920400155669, 0.999983383636728, 0.999999445465596, 0.999999986708208,
    ],
    640.0: [
        0.292183243369409, 0.770971337831559, 0.901972536458179, 0.988942317700791, 0.999282303345473,
        0.999847268911494, 0.999994975388749, 0.999999213408575, 0.999999985276742, 0.999999999802566,
    ],
}

# accuracy / normalized energy vs tau in {64, 96, ..., 320} ms; lam=0.0025, zeta=20
TAU_TRADEOFF_TAUS = [0.064, 0.096, 0.128, 0.16, 0.192, 0.224, 0.256, 0.288, 0.32]
TAU_TRADEOFF_ACCURACY = {
    3200.0: [
        0.9512296226421596, 0.8581619521631337, 0.7652553537804373, 0.7131629674555102, 0.6809989942231053,
        0.6593277204041967, 0.6437719360806378, 0.6320891117114096, 0.6229936862293751,
    ],
    6400.0: [
        0.9512296226421596, 0.9349529395081246, 0.9016490385616547, 0.8762932809005646, 0.8581859714742736,
        0.8449277130037433, 0.8348796722495442, 0.8270801077481053, 0.8208185723725665,
    ],
    9600.0: [
        0.9512296226421596, 0.947127598566313, 0.9349250284711721, 0.9234708171521493, 0.9143247223807629,
        0.9072639863260599, 0.9016765437254549, 0.8971682760975684, 0.8935377286909627,
    ],
}
TAU_TRADEOFF_ENERGY = {
    3200.0: [
        0.9509821844061742, 0.6338602975871879, 0.47574588066461904, 0.3804179848033906, 0.31710108462265624,
        0.2717968365499893, 0.23786968024321758, 0.21145443162437666, 0.19023728274665014,
    ],
    6400.0: [
        0.9512740633560088, 0.6344575115527387, 0.47562037223317283, 0.3806166303569464, 0.31709003335609887,
        0.27163129828551497, 0.23769286651261137, 0.21138657155110566, 0.1901930665256872,
    ],
    9600.0: [
        0.951684016363628, 0.6334912006287624, 0.4759807161204301, 0.38036736344656935, 0.317118875755848,
        0.27160921978405705, 0.23760906481507163, 0.21125081486222402, 0.19015811336580238,
    ],
}

# minimum normalized energy vs accuracy floor, per preset setting
U_TH = [0.6, 0.65, 0.7, 0.75, 0.8, 0.85, 0.9, 0.95]
MIN_ENERGY = {
    1: [0.10775828492818908, 0.1984420942506346, 0.3262725195779148, 0.46615961420027746,
        0.49746643909727967, 0.8500160902253981, 0.9003245225862656, 0.9500411305585277],
    2: [0.07962997691076046, 0.08626212418668236, 0.09298057648246677, 0.09959785381465606,
        0.10628674850760782, 0.1661840272855016, 0.3328636616872946, 0.9500411305585277],
    3: [0.18540013879475564, 0.2778506911545259, 0.40459672058102486, 0.5407570874314825,
        0.5770738058522185, 0.9180228178365689, 0.9723562467774461, 1.0260505015907517],
    4: [0.13700486028815903, 0.1484155933587772, 0.3210641088922804, 0.8101522932427543],
    5: [0.24355595724079226, 0.33079367672774657, 0.4471463515693029, 0.5697693647632007,
        0.6080345194246984, 0.9129849092895034, 0.9670201682494889, 1.020419760729793],
    6: [0.6033214536574977, 0.6535703283980241, 0.7035930572359673, 0.7536666378145013,
        0.804282153921038, 0.8540161847675782, 0.9045613638065693, 0.9545119333879026],
}
