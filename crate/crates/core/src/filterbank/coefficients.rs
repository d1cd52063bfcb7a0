// Generated by tools/design_filterbank.py. Do not edit by hand.

pub const DESIGN_RATE: u32 = 16000;
pub const RIPPLE_DB: f64 = 0.5;
pub const ATTENUATION_DB: f64 = 40.0;

/// Per band: overall gain, then `[b0, b1, b2, a0, a1, a2]` per section.
pub(crate) const TABLE: [(f64, [[f64; 6]; 4]); 8] = [
    // s1: [50, 75) Hz
    (0.009946333376788793, [
        [1.0, -1.9975433385336832, 1.0000000000000002, 1.0, -1.9944071839270676, 0.99511272737287],
        [1.0, -1.999863928905774, 1.0, 1.0, -1.9955303642514866, 0.9960022201050083],
        [1.0, -1.9988423787883685, 1.0000000000000002, 1.0, -1.9975199153489953, 0.9983941171369827],
        [1.0, -1.9997111520883961, 1.0, 1.0, -1.9985562382612563, 0.998938239799142],
    ]),
    // s2: [75, 100) Hz
    (0.009946333376788788, [
        [1.0, -1.9966503961946147, 0.9999999999999999, 1.0, -1.9939128327330455, 0.9952428723385653],
        [1.0, -1.9996008502313707, 1.0, 1.0, -1.9948708546203426, 0.9958719758416524],
        [1.0, -1.9981016862314562, 1.0000000000000002, 1.0, -1.996921619422, 0.9984718196375771],
        [1.0, -1.999295492140815, 1.0000000000000002, 1.0, -1.9979988981231869, 0.9988605010010658],
    ]),
    // s3: [100, 150) Hz
    (0.009900987385197428, [
        [1.0, -1.9901847088611984, 1.0000000000000002, 1.0, -1.9874348661761165, 0.9902497210793817],
        [1.0, -1.999455803644395, 1.0000000000000002, 1.0, -1.9901363718503877, 0.9920198367652758],
        [1.0, -1.9953711539981904, 0.9999999999999997, 1.0, -1.993298055780369, 0.9967912899419243],
        [1.0, -1.9988447290528224, 1.0, 1.0, -1.99635035259566, 0.9978774004953072],
    ]),
    // s4: [150, 200) Hz
    (0.009900987385197442, [
        [1.0, -1.986619462734938, 0.9999999999999997, 1.0, -1.9852031045674392, 0.9905089769349184],
        [1.0, -1.9984038349041888, 1.0, 1.0, -1.9877648863757555, 0.991760185457232],
        [1.0, -1.9924108049145213, 0.9999999999999999, 1.0, -1.9907529202971688, 0.996946578556471],
        [1.0, -1.9971825681892195, 1.0, 1.0, -1.994278264074496, 0.9977219668919998],
    ]),
    // s5: [200, 300) Hz
    (0.009834734061723253, [
        [1.0, -1.96091956995603, 1.0000000000000002, 1.0, -1.9693997201563627, 0.9805975312629976],
        [1.0, -1.9978246228616376, 1.0, 1.0, -1.976597874340594, 0.9840987050103348],
        [1.0, -1.981510809973205, 1.0000000000000002, 1.0, -1.9796583658127758, 0.993596679087817],
        [1.0, -1.9953808472034835, 1.0000000000000004, 1.0, -1.9896583007325537, 0.9957576571106719],
    ]),
    // s6: [300, 400) Hz
    (0.009834734061723256, [
        [1.0, -1.9467623705244606, 1.0, 1.0, -1.9600159829786998, 0.9811128121379767],
        [1.0, -1.993622282661549, 0.9999999999999998, 1.0, -1.9676811870164588, 0.9835818559431228],
        [1.0, -1.9697080912779474, 0.9999999999999998, 1.0, -1.9692088473522273, 0.9939073010911081],
        [1.0, -1.9887398634429938, 1.0000000000000002, 1.0, -1.981699247408582, 0.9954464568227738],
    ]),
    // s7: [400, 600) Hz
    (0.009796681042810663, [
        [1.0, -1.8465110750224694, 0.9999999999999999, 1.0, -1.9173446931896279, 0.9615953346908644],
        [1.0, -1.99132102035428, 1.0000000000000002, 1.0, -1.9386961094479382, 0.9684135334268099],
        [1.0, -1.9264605877093608, 1.0000000000000002, 1.0, -1.9318837835888913, 0.987264630156554],
        [1.0, -1.9815542722086268, 0.9999999999999999, 1.0, -1.9672120706217107, 0.9915201312742528],
    ]),
    // s8: [600, 800) Hz
    (0.009796681042810658, [
        [1.0, -1.7915060923680264, 1.0000000000000004, 1.0, -1.879439216820009, 0.9626201274321252],
        [1.0, -1.9746001804612492, 1.0000000000000002, 1.0, -1.904535457995295, 0.967382573101638],
        [1.0, -1.8798646889231698, 0.9999999999999998, 1.0, -1.890006290215458, 0.9878901745076072],
        [1.0, -1.9551126921814426, 0.9999999999999998, 1.0, -1.93621877382389, 0.9908922883894062],
    ]),
];
